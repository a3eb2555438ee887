"""
Модуль cs_tau.py

Множитель C_s(τ) в тождестве (−Δ)^s|x|^τ = C_s(τ)|x|^{τ−2s}: замкнутая форма через
гамма-функции, независимое интегральное представление, производные в нуле и
показатели Харди τ±(μ).
"""

import logging
import math
import sys
from typing import Tuple

from scipy import integrate, optimize, special

from core.errors import ConsistencyError, DomainError, UnsupportedDimensionError
from quadrature.angular import sphere_mean
from specfun.gamma import c_frac, sphere_measure
from specfun.models import DimPair, HardyData

logger = logging.getLogger(__name__)

TAYLOR_RADIUS = 1e-3
ROOT_XTOL = 1e-14


def _check_tau(d: DimPair, tau: float) -> None:
    if not (-d.N < tau < 2.0 * d.s):
        raise DomainError(f"tau={tau} outside (-N, 2s) = ({-d.N}, {2.0 * d.s})")


def cs_tau_closed(d: DimPair, tau: float) -> float:
    """
    C_s(τ) = 2^{2s}Γ((N+τ)/2)Γ((2s−τ)/2) / (Γ(−τ/2)Γ((N−2s+τ)/2)).
    Знаменатель берётся через 1/Γ, поэтому нули в τ = 0 и τ = 2s−N точные.
    """
    _check_tau(d, tau)
    N, s = d.N, d.s
    return float(
        2.0 ** (2.0 * s)
        * special.gamma((N + tau) / 2.0)
        * special.gamma((2.0 * s - tau) / 2.0)
        * special.rgamma(-tau / 2.0)
        * special.rgamma((N - 2.0 * s + tau) / 2.0)
    )


def cs_tau_integral(d: DimPair, tau: float, tol: float = 1e-11) -> float:
    """
    C_s(τ) через сингулярный интеграл −c_{N,s}∫(|e₁−z|^τ − 1)|z|^{−N−2s}dz.

    Интеграл по ℝ^N сводится к радиальному через нормированное сферическое
    среднее m(ρ) от |e₁ − ρσ|^τ. Инверсия ρ → 1/ρ (m(ρ) = ρ^τ m(1/ρ)) переносит
    хвост на (0, 1); у нуля m(ρ) − 1 ≈ κρ² с κ = τ(N+τ−2)/(2N) интегрируется явно.

    Args:
        d: пара (N, s), N ≤ 3
        tau: показатель из (−N, 2s)
        tol: относительный допуск квадратуры

    Returns:
        Значение C_s(τ)
    """
    if d.N > 3:
        raise UnsupportedDimensionError(f"integral representation needs N<=3, got N={d.N}")
    _check_tau(d, tau)
    if tau == 0.0:
        return 0.0
    N, s = d.N, d.s
    area = sphere_measure(N)

    def mean_minus_one(rho: float) -> float:
        return sphere_mean(N, 1.0, rho, -tau / 2.0) / area - 1.0

    def integrand(rho: float) -> float:
        return (rho ** (-1.0 - 2.0 * s) + rho ** (2.0 * s - 1.0 - tau)) * mean_minus_one(rho)

    kappa = tau * (N + tau - 2.0) / (2.0 * N)
    rho0 = TAYLOR_RADIUS
    near = kappa * (
        rho0 ** (2.0 - 2.0 * s) / (2.0 - 2.0 * s)
        + rho0 ** (2.0 + 2.0 * s - tau) / (2.0 + 2.0 * s - tau)
    )
    body, abserr = integrate.quad(integrand, rho0, 1.0, limit=400, epsabs=0.0, epsrel=tol)
    logger.debug(f"cs_tau_integral N={N} s={s} tau={tau}: body={body} abserr={abserr}")
    inverted_tail = 1.0 / (2.0 * s - tau) - 1.0 / (2.0 * s)
    return -c_frac(d) * area * (near + body + inverted_tail)


def mu_zero(d: DimPair) -> float:
    """μ₀ = −2^{2s}Γ²((N+2s)/4)/Γ²((N−2s)/4) = −max C_s."""
    N, s = d.N, d.s
    return -(2.0 ** (2.0 * s)) * (math.gamma((N + 2.0 * s) / 4.0) / math.gamma((N - 2.0 * s) / 4.0)) ** 2


def tau_pm(d: DimPair, mu: float) -> HardyData:
    """
    Показатели Харди: корни C_s(τ) + μ = 0 по разные стороны от (2s−N)/2.
    τ₊ ищется на правой монотонной ветви, τ₋ = 2s−N−τ₊ по симметрии.
    """
    mu0 = mu_zero(d)
    if mu < mu0:
        raise DomainError(f"mu={mu} below the critical coupling mu0={mu0}")
    mid = d.midpoint
    if mu == mu0:
        return HardyData(mu=mu, mu0=mu0, tau_minus=mid, tau_plus=mid)

    def f(tau: float) -> float:
        return cs_tau_closed(d, tau) + mu

    # C_s → −∞ при τ → 2s, ищем правый конец скобки
    gap = 2.0 * d.s - mid
    for k in range(1, 200):
        right = 2.0 * d.s - gap * 2.0 ** (-k)
        if f(right) < 0.0:
            break
    else:
        raise DomainError(f"no sign change for tau_plus at mu={mu}")
    tau_plus = optimize.brentq(f, mid, right, xtol=ROOT_XTOL, rtol=4.0 * sys.float_info.epsilon, maxiter=500)
    return HardyData(mu=mu, mu0=mu0, tau_minus=d.serrin_tau - tau_plus, tau_plus=tau_plus)


def _richardson(values, ratio_power: float, levels: int):
    """Экстраполяция Ричардсона по шагам h/2^k с рядом ошибок по степеням h^{2j}."""
    table = list(values)
    for j in range(1, levels):
        factor = 2.0 ** (ratio_power * j)
        table = [(factor * table[i + 1] - table[i]) / (factor - 1.0) for i in range(len(table) - 1)]
    return table[0]


def cs_derivs_at_zero(d: DimPair) -> Tuple[float, float]:
    """
    (C_s'(0), C_s''(0)) центральными разностями с экстраполяцией Ричардсона.
    Первая производная сверяется с пределом −2^{2s−1}Γ(N/2)Γ(s)/Γ((N−2s)/2).
    """
    N, s = d.N, d.s
    # ближайшая к нулю особенность C_s: полюс в τ = 2s
    h0 = 0.5 * min(0.25, 0.5 * s)
    levels = 5
    steps = [h0 / 2.0 ** k for k in range(levels)]
    first = [(cs_tau_closed(d, h) - cs_tau_closed(d, -h)) / (2.0 * h) for h in steps]
    second = [(cs_tau_closed(d, h) + cs_tau_closed(d, -h)) / (h * h) for h in steps]
    c1 = _richardson(first, 2.0, levels)
    c2 = _richardson(second, 2.0, levels)
    c1_limit = -(2.0 ** (2.0 * s - 1.0)) * math.gamma(N / 2.0) * math.gamma(s) / math.gamma((N - 2.0 * s) / 2.0)
    if abs(c1 - c1_limit) > 1e-7 * abs(c1_limit):
        raise ConsistencyError(f"C_s'(0) by differences {c1} disagrees with the Gamma limit {c1_limit}")
    logger.debug(f"cs_derivs_at_zero N={N} s={s}: c1={c1} c2={c2}")
    return c1, c2
