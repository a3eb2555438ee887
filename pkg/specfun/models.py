from pydantic import BaseModel, ConfigDict, Field, model_validator


class DimPair(BaseModel):
    """
    Пара (N, s): размерность пространства и порядок дробного лапласиана.
    Неизменяемая и хешируемая, поэтому служит ключом кешей квадратур и матриц.
    """
    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=1)
    s: float = Field(gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _require_n_above_2s(self):
        if self.N <= 2.0 * self.s:
            raise ValueError(f"N={self.N} must exceed 2s={2.0 * self.s}")
        return self

    @property
    def serrin_tau(self) -> float:
        """Нуль 2s − N функции C_s (показатель фундаментального решения)."""
        return 2.0 * self.s - self.N

    @property
    def midpoint(self) -> float:
        return (2.0 * self.s - self.N) / 2.0


class HardyData(BaseModel):
    """Показатели Харди τ±(μ): два радиальных решения |x|^τ оператора (−Δ)^s + μ|x|^{−2s}."""
    model_config = ConfigDict(frozen=True)

    mu: float
    mu0: float
    tau_minus: float
    tau_plus: float
