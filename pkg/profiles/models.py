from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from params.models import ProblemParams


class Profile(BaseModel):
    """
    Профиль ω(φ) на сетке [0, π/2]: φ = 0 соответствует границе z = 0,
    φ = π/2 оси x = 0. omega0 = ω(0), conormal0 = dω/dφ^s(0), a = ω(π/2).
    lam: коэффициент Λ задачи, решением которой является профиль.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    pp: ProblemParams
    n: int
    grid: np.ndarray
    values: np.ndarray
    omega0: float
    conormal0: Optional[float] = None
    a: float
    lam: float
    iterations: int = 0
    discretization_estimate: Optional[float] = None
    cross_check_error: Optional[float] = None
    marker: Optional[str] = None

    def scaled(self, factor: float) -> "Profile":
        """Профиль factor·ω (задача линейна по a)."""
        return self.model_copy(update={
            "values": factor * self.values,
            "omega0": factor * self.omega0,
            "conormal0": None if self.conormal0 is None else factor * self.conormal0,
            "a": factor * self.a,
            "discretization_estimate": None if self.discretization_estimate is None
            else abs(factor) * self.discretization_estimate,
        })
