from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from params.models import ProblemParams


class CylinderSystem(BaseModel):
    """
    Дискретизация w_tt + Θw_t + Λw + A_s[w] = 0 на [T₀, T₁] × [0, π/2]
    с нелинейным условием на φ = 0 и симметрией на φ = π/2. transfer — матрица
    угловой схемы (cylinder.grid), resistance и volume — для энергии.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    pp: ProblemParams
    t_grid: np.ndarray
    phi_grid: np.ndarray
    nphi: int
    transfer: np.ndarray
    resistance: np.ndarray
    volume: np.ndarray
    theta: float
    lam: float
    kappa: float

    @property
    def n_phi(self) -> int:
        return len(self.phi_grid)

    @property
    def dt(self) -> float:
        return float(self.t_grid[1] - self.t_grid[0])


class CylinderSolution(BaseModel):
    """Решение на сетке (t, φ), включая заданные значения на концах."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    pp: ProblemParams
    t_grid: np.ndarray
    phi_grid: np.ndarray
    resistance: np.ndarray
    volume: np.ndarray
    w: np.ndarray
    energy_trace: Optional[np.ndarray] = None
    newton_residual: float
    iterations: int = 0


class LimitReport(BaseModel):
    """Расстояния срезов до кандидатов {0, ω_root, −ω_root}."""
    candidates: List[str]
    distances: List[List[float]]
    nearest_at_start: str
    start_distance: float
    nearest_interior: str
    interior_distance: float
    monotone_near_start: bool
    omega_norm: float
