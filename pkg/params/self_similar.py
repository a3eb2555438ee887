import logging
import math
from typing import Optional

from core.errors import DomainError, RegimeError
from params.models import ProblemParams, Regime
from params.regime import regime, regime_clause
from specfun.cs_tau import cs_tau_closed

logger = logging.getLogger(__name__)

PROFILE_REGIMES = (Regime.UNIQUE_PROFILE_EF, Regime.UNIQUE_PROFILE_LE)


def require_profile_regime(pp: ProblemParams) -> None:
    """Бросает RegimeError с текстом утверждения, если положительного профиля нет."""
    label = regime(pp)
    if label not in PROFILE_REGIMES:
        clause = regime_clause(pp)
        raise RegimeError(f"no positive self-similar solution for {label}: {clause}", clause=clause)


def c_p(pp: ProblemParams) -> float:
    """
    Константа явного решения U_p = c_p|x|^{τ_p}: c_p^{p−1} = −ε·C_s(τ_p).
    Именно этот знак зануляет (−Δ)^s U_p + εU_p^p.
    """
    require_profile_regime(pp)
    base = -pp.eps * cs_tau_closed(pp.d, pp.tau_p)
    if base <= 0.0:
        clause = regime_clause(pp)
        raise RegimeError(f"-eps*C_s(tau_p)={base} is not positive", clause=clause)
    return base ** (1.0 / (pp.p - 1.0))


def c_p_printed(pp: ProblemParams) -> Optional[float]:
    """
    Печатная ветвь (ε·C_s(τ_p))^{1/(p−1)}; None, если под корнем отрицательное число.
    """
    tau = pp.tau_p
    if not (-pp.N < tau < 2.0 * pp.s):
        return None
    base = pp.eps * cs_tau_closed(pp.d, tau)
    if base < 0.0:
        return None
    return base ** (1.0 / (pp.p - 1.0))


def u_p_eval(pp: ProblemParams, r: float) -> float:
    """U_p(r) = c_p·r^{−2s/(p−1)}."""
    if not r > 0.0 or math.isinf(r):
        raise DomainError(f"radius must be positive and finite, got {r}")
    return c_p(pp) * r ** pp.tau_p
