"""
Модуль log_serrin.py

Функции w_m(x) = |x|^{2s−N}(−ln|x|)^m вблизи нуля (серриновский показатель с
логарифмической поправкой), их дробный лапласиан и главный член асимптотики
    r^{−N}[m·C_s'(0)·L^{m−1} + ½m(m−1)·C_s''(0)·L^{m−2}],  L = −ln r.
"""

import logging
import math
from typing import Tuple

from config.config import QUAD_TOL
from core.errors import DomainError
from flap.models import RadialFunction, smooth_step
from flap.radial import frac_lap_radial
from specfun.cs_tau import cs_derivs_at_zero
from specfun.models import DimPair

logger = logging.getLogger(__name__)

# ν_m = (−ln r)^m при r ≤ e^{−2}, гладкий срез до нуля на [e^{−2}, e^{−1}]
INNER_RADIUS = math.exp(-2.0)
OUTER_RADIUS = math.exp(-1.0)


def log_profile(m: float, r: float) -> float:
    """ν_m(r) с гладким срезом."""
    if r >= OUTER_RADIUS:
        return 0.0
    nu = (-math.log(r)) ** m
    if r <= INNER_RADIUS:
        return nu
    return nu * float(smooth_step(math.log(r) + 2.0))


def serrin_log_function(d: DimPair, m: float) -> RadialFunction:
    """w_m как RadialFunction с компактным носителем."""
    if m == 0.0:
        raise DomainError("m must be nonzero")
    serrin = 2.0 * d.s - d.N
    return RadialFunction(
        evaluate=lambda r: r ** serrin * log_profile(m, r),
        tau_origin=serrin if m < 0 else serrin - 1e-2,
        tau_infty=serrin,
        cutoff=OUTER_RADIUS,
        label=f"w_{m:g}",
    )


def leading_coefficients(d: DimPair, m: float) -> Tuple[float, float]:
    """(I_m, J_m) = (m·C_s'(0), ½m(m−1)·C_s''(0))."""
    c1, c2 = cs_derivs_at_zero(d)
    return m * c1, 0.5 * m * (m - 1.0) * c2


def frac_lap_log(d: DimPair, m: float, r: float, tol: float = QUAD_TOL) -> Tuple[float, float]:
    """
    (−Δ)^s w_m(r) и главный член асимптотики при r → 0.

    Args:
        d: пара (N, s)
        m: ненулевой показатель логарифма
        r: радиус из (0, e^{−2})
        tol: допуск квадратуры

    Returns:
        (value, leading)
    """
    if not 0.0 < r < INNER_RADIUS:
        raise DomainError(f"r={r} must lie in (0, e^-2)")
    w = serrin_log_function(d, m)
    value = frac_lap_radial(d, w, r, tol)
    big_l = -math.log(r)
    i_m, j_m = leading_coefficients(d, m)
    leading = r ** (-d.N) * (i_m * big_l ** (m - 1.0) + j_m * big_l ** (m - 2.0))
    logger.debug(f"log-Serrin N={d.N} s={d.s} m={m} r={r}: value={value:.6e} leading={leading:.6e} "
                 f"ratio={value / leading if leading else math.nan:.6f}")
    return value, leading
