import math
from typing import List

from pydantic import BaseModel, Field, model_validator


class ExtensionPoint(BaseModel):
    """Точка ξ = (x, z) полупространства и значение продолжения u(ξ)."""
    x: float = Field(ge=0.0)
    z: float = Field(gt=0.0)
    rho: float
    value: float

    @model_validator(mode="after")
    def _rho_is_norm(self):
        if not math.isclose(self.rho ** 2, self.x ** 2 + self.z ** 2, rel_tol=1e-12):
            raise ValueError(f"rho={self.rho} is not |(x, z)| for x={self.x}, z={self.z}")
        return self


class ConormalEstimate(BaseModel):
    """Лестница z_k и предел −z^{1−2s}u_z при z → 0."""
    x: float
    z_ladder: List[float]
    samples: List[float]
    raw_limit: float
    value: float
    fit_residual: float


class LiftingReport(BaseModel):
    """sup u(x,z)·|ξ|^{2s/(p−1)} по сетке и константа следа."""
    ratio_max: float
    trace_constant: float
    points: List[ExtensionPoint] = Field(default_factory=list)
