"""
Модуль shooting.py

Функции пристрелки по нормировке a = ω(π/2) и автомодельный профиль.
Граничное условие профиля: dω/dφ^s(0) + εκ_s|ω(0)|^{p−1}ω(0) = 0, где κ_s связывает
конормальную производную продолжения с (−Δ)^s; тогда след профиля решает
(−Δ)^s v + εv^p = 0 и ω(0) = c_p.
"""

import logging
import math
from functools import lru_cache
from typing import Tuple

from scipy import optimize

from config.config import CROSS_CHECK_TOL, PROFILE_GRID, PROFILE_TOL
from core.errors import ConvergenceError
from params.models import ProblemParams
from params.self_similar import c_p, require_profile_regime
from profiles.models import Profile
from profiles.picard import solve_profile_unit
from specfun.gamma import extension_constant

logger = logging.getLogger(__name__)

BRACKET_LOW = 2.0 ** -20
BRACKET_HIGH = 2.0 ** 20
MAX_BRACKET_DOUBLINGS = 60


@lru_cache(maxsize=64)
def unit_profile(pp: ProblemParams, tol: float = PROFILE_TOL, n: int = PROFILE_GRID) -> Profile:
    """Кешированный ω₁ для пристрелки."""
    return solve_profile_unit(pp, tol=tol, n=n)


def shooting_ratio(pp: ProblemParams, a: float, unit: Profile) -> float:
    """F(a)/a = dω₁/dφ^s(0) + εκ_s a^{p−1}ω₁(0)^p."""
    kappa = extension_constant(pp.d)
    return unit.conormal0 + pp.eps * kappa * a ** (pp.p - 1.0) * unit.omega0 ** pp.p


def shooting_value(pp: ProblemParams, a: float, tol: float = PROFILE_TOL, n: int = PROFILE_GRID) -> float:
    """
    F(a) = a(dω₁/dφ^s(0) + εκ_s a^{p−1}ω₁(0)^p): ε = +1 даёт F*, ε = −1 даёт F.
    """
    require_profile_regime(pp)
    return a * shooting_ratio(pp, a, unit_profile(pp, tol, n))


def _bracket(g) -> Tuple[float, float]:
    low, high = BRACKET_LOW, BRACKET_HIGH
    g_low, g_high = g(low), g(high)
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if g_low * g_high < 0.0:
            return low, high
        low, high = 0.5 * low, 2.0 * high
        g_low, g_high = g(low), g(high)
    raise ConvergenceError("no sign change of the shooting function in the dyadic bracket")


def solve_selfsimilar(pp: ProblemParams, tol: float = PROFILE_TOL, n: int = PROFILE_GRID,
                      cross_check_tol: float = CROSS_CHECK_TOL) -> Tuple[float, Profile]:
    """
    Единственный положительный корень a пристрелки и профиль ω_a = a·ω₁.

    Args:
        pp: параметры в режиме UniqueProfileEF или UniqueProfileLE
        tol: допуск итерации Пикара
        n: число ячеек сетки
        cross_check_tol: допуск сверки ω(0) с c_p (превышение логируется)

    Returns:
        (a_root, Profile) с заполненным cross_check_error
    """
    require_profile_regime(pp)
    unit = unit_profile(pp, tol, n)

    def g(a: float) -> float:
        return shooting_ratio(pp, a, unit)

    low, high = _bracket(g)
    a_root = optimize.brentq(g, low, high, xtol=1e-15, rtol=8.9e-16, maxiter=500)
    prof = unit.scaled(a_root)
    expected = c_p(pp)
    error = abs(prof.omega0 - expected) / expected
    prof = prof.model_copy(update={"cross_check_error": error})
    if error > cross_check_tol or not math.isfinite(error):
        logger.warning(f"omega(0)={prof.omega0!r} vs c_p={expected!r}: relative error {error:.3e} "
                       f"exceeds {cross_check_tol:g}")
    else:
        logger.info(f"self-similar profile N={pp.N} s={pp.s} p={pp.p} eps={pp.eps}: a={a_root:.12g} "
                    f"omega0={prof.omega0:.12g} c_p={expected:.12g} rel.err={error:.2e}")
    return a_root, prof


def printed_normalization(pp: ProblemParams, prof: Profile) -> float:
    """ω(0) для граничного условия без κ_s: κ_s^{1/(p−1)}·ω(0)."""
    return extension_constant(pp.d) ** (1.0 / (pp.p - 1.0)) * prof.omega0
