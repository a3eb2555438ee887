from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from specfun.models import DimPair


class Regime(str, Enum):
    """
    Структура множества положительных автомодельных решений для (N, s, p, ε).
    Ровно одно значение на каждый набор параметров.
    """
    # --- Только тривиальное решение ---
    TRIVIAL_ONLY = "TrivialOnly"
    # --- Единственный профиль ---
    UNIQUE_PROFILE_EF = "UniqueProfileEF"  # ε = +1, p_weak < p < p_serrin
    UNIQUE_PROFILE_LE = "UniqueProfileLE"  # ε = −1, p > p_serrin, p ≠ p_sobolev
    # --- Критические показатели ---
    SERRIN_CRITICAL = "SerrinCritical"
    SOBOLEV_CRITICAL = "SobolevCritical"

    def __str__(self) -> str:
        return self.value


class ProblemParams(BaseModel):
    """Набор (N, s, p, ε) уравнения (−Δ)^s v + ε|v|^{p−1}v = 0."""
    model_config = ConfigDict(frozen=True)

    d: DimPair
    p: float = Field(gt=1.0)
    eps: Literal[1, -1]

    @property
    def N(self) -> int:
        return self.d.N

    @property
    def s(self) -> float:
        return self.d.s

    @property
    def tau_p(self) -> float:
        return -2.0 * self.d.s / (self.p - 1.0)


class CriticalExponents(BaseModel):
    """Критические показатели и коэффициенты Λ, Θ, τ_p (последние три только при заданном p)."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    p_weak: float
    p_serrin: float
    p_sobolev: float
    p_star_Q: float
    p_star_printed: float
    lambda_: Optional[float] = Field(default=None, alias="lambda")
    theta: Optional[float] = None
    tau_p: Optional[float] = None
