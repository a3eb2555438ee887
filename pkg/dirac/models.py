from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from params.models import ProblemParams


class DiracSolution(BaseModel):
    """
    Радиальное решение (−Δ)^s v + v^p = kδ₀ в B₁, v = 0 вне шара.
    r_grid/v: запрошенная сетка; full_grid/full_v: расчётная сетка,
    продолженная к нулю до области, где нелинейность пренебрежима.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    pp: ProblemParams
    k: float = Field(ge=0.0)
    r_grid: np.ndarray
    v: np.ndarray
    full_grid: np.ndarray
    full_v: np.ndarray
    weights: np.ndarray
    bounds_ok: bool
    monotone: bool
    sandwich_constant: float
    bracket_width: float
    iterations: int
    method: str


class VInfinityReport(BaseModel):
    saturated: bool
    regime: str
    k_final: float
    rungs: int
    changes: List[float]
    limit_radius: float
    limit_ratio: Optional[float] = None
    small_radius_ratios: List[Tuple[float, float]] = Field(default_factory=list)
    upper_margin: Optional[float] = None
    c_star: Optional[float] = None
    growth_exponent: Optional[float] = None
