"""
Модуль radial.py

Прямое вычисление (−Δ)^s v(r) для радиальной v через главное значение
    c_{N,s}·PV∫₀^∞ (v(r) − v(ρ))·K(r, ρ)·ρ^{N−1} dρ,
K: угловое ядро (интеграл |r e₁ − ρσ|^{−N−2s} по сфере).

Ближняя панель (r−δ, r+δ) сворачивается по h = |ρ−r|; внутри h < h_cut
разность v(r) − v(r ± h) заменяется тейлоровским многочленом второго порядка
и интегрируется правилом Гаусса–Якоби с весом h^{1−2s}. Дальнее поле усекается
на радиусе R из метаданных tau_infty, хвост считается по модели C·ρ^{tau_infty}.
"""

import logging
import math
from typing import List

import numpy as np
from scipy import integrate, special

from config.config import QUAD_TOL
from core.errors import ConvergenceError, UnsupportedDimensionError
from flap.models import RadialFunction, check_metadata
from params.models import ProblemParams
from quadrature.adaptive import adaptive_integrate
from quadrature.angular import SUPPORTED_DIMENSIONS, angular_kernel
from specfun.gamma import c_frac, sphere_measure
from specfun.models import DimPair

logger = logging.getLogger(__name__)

NEAR_FRACTION = 0.5
TAYLOR_FRACTION = 1e-4
JACOBI_NODES = 16
MAX_TRUNCATION = 1e12


def _weighted(d: DimPair, r: float, rho: float) -> float:
    return angular_kernel(d, r, rho) * rho ** (d.N - 1)


def _near_panel(d: DimPair, v: RadialFunction, r: float, delta: float, tol: float) -> float:
    s = d.s
    vr = v.value(r)
    d1, d2 = v.derivatives(r)
    h_cut = min(TAYLOR_FRACTION * r, 0.1 * delta)

    def model(h: float) -> float:
        plus = _weighted(d, r, r + h)
        minus = _weighted(d, r, r - h)
        return -d1 * h * (plus - minus) - 0.5 * d2 * h * h * (plus + minus)

    x, w = special.roots_jacobi(JACOBI_NODES, 0.0, 1.0 - 2.0 * s)
    nodes = 0.5 * h_cut * (1.0 + x)
    weights = w * (0.5 * h_cut) ** (2.0 - 2.0 * s)
    taylor_part = float(sum(wk * model(hk) / hk ** (1.0 - 2.0 * s) for hk, wk in zip(nodes, weights)))

    def direct(h: float) -> float:
        return ((vr - v.value(r + h)) * _weighted(d, r, r + h)
                + (vr - v.value(r - h)) * _weighted(d, r, r - h))

    points = [p for p in h_cut * 10.0 ** np.arange(1, 8) if p < delta]
    direct_part = adaptive_integrate(direct, h_cut, delta, tol=tol, points=points or None, limit=400)
    return taylor_part + direct_part


def _inner_part(d: DimPair, v: RadialFunction, r: float, upper: float, tol: float) -> float:
    vr = v.value(r)
    alpha = d.N - 1.0 + min(v.tau_origin, 0.0)

    def f(rho: float) -> float:
        return (vr - v.value(rho)) * _weighted(d, r, rho)

    split = upper
    total = 0.0
    if v.cutoff is not None and 0.0 < v.cutoff < upper:
        # за срезом v = 0
        split = v.cutoff
        total = vr * adaptive_integrate(lambda rho: _weighted(d, r, rho), split, upper, tol=tol, limit=400)
    edges = [0.0] + sorted(b for b in v.breaks if 0.0 < b < split) + [split]
    for a, b in zip(edges[:-1], edges[1:]):
        if a == 0.0 and alpha < 0.0:
            total += adaptive_integrate(f, a, b, tol=tol, endpoint_exponents=(alpha, 0.0), limit=400)
        else:
            total += adaptive_integrate(f, a, b, tol=tol, limit=400)
    return total


def _geometric_panels(a: float, b: float) -> List[float]:
    edges = [a]
    while edges[-1] * 2.0 < b:
        edges.append(edges[-1] * 2.0)
    edges.append(b)
    return edges


def truncation_radius(d: DimPair, v: RadialFunction, r: float, tol: float) -> float:
    """
    R, за которым заявленный хвост C·ρ^{tau_infty} вносит меньше tol/10:
    C|S^{N−1}|R^{tau_infty−2s}/(2s − tau_infty) = tol/10.
    """
    gap = 2.0 * d.s - v.tau_infty
    sample = max(4.0 * r, 1.0)
    scale = abs(v.value(sample)) / sample ** v.tau_infty
    if scale == 0.0:
        return 2.0 * sample
    radius = (10.0 * scale * sphere_measure(d.N) / (gap * tol)) ** (1.0 / gap)
    return float(min(max(radius, 2.0 * sample), MAX_TRUNCATION * max(r, 1.0)))


def _outer_part(d: DimPair, v: RadialFunction, r: float, lower: float, tol: float) -> float:
    vr = v.value(r)

    def f(rho: float) -> float:
        return (vr - v.value(rho)) * _weighted(d, r, rho)

    if v.cutoff is not None and v.cutoff > lower:
        finite_end = v.cutoff
        tail_model = None
    elif v.cutoff is not None:
        finite_end = lower
        tail_model = None
    else:
        finite_end = truncation_radius(d, v, r, tol)
        coefficient = v.value(finite_end) / finite_end ** v.tau_infty
        tail_model = (coefficient, v.tau_infty)

    total = 0.0
    edges = _geometric_panels(lower, finite_end) if finite_end > lower else [lower]
    edges = sorted(set(edges) | {b for b in v.breaks if lower < b < edges[-1]})
    for a, b in zip(edges[:-1], edges[1:]):
        total += adaptive_integrate(f, a, b, tol=tol, limit=200)

    if tail_model is None:
        def tail(rho: float) -> float:
            return vr * _weighted(d, r, rho)
    else:
        coefficient, tau = tail_model

        def tail(rho: float) -> float:
            return (vr - coefficient * rho ** tau) * _weighted(d, r, rho)

    value, abserr = integrate.quad(tail, edges[-1], math.inf, epsabs=tol * 1e-2, epsrel=tol, limit=400)
    if not math.isfinite(value):
        raise ConvergenceError(f"far-field tail beyond R={edges[-1]} did not converge")
    logger.debug(f"flap tail from R={edges[-1]:.3e}: {value:.6e} (abserr {abserr:.1e})")
    return total + value


def frac_lap_radial(d: DimPair, v: RadialFunction, r: float, tol: float = QUAD_TOL) -> float:
    """
    (−Δ)^s v(r) для радиальной v на ℝ^N, N ≤ 3.

    Args:
        d: пара (N, s)
        v: радиальная функция с метаданными
        r: радиус > 0
        tol: относительный допуск квадратур

    Returns:
        Значение дробного лапласиана
    """
    if d.N not in SUPPORTED_DIMENSIONS:
        raise UnsupportedDimensionError(f"frac_lap_radial supports N<=3, got N={d.N}")
    check_metadata(d, v)
    delta = NEAR_FRACTION * r
    for edge in ([v.cutoff] if v.cutoff is not None else []) + list(v.breaks):
        if edge != r:
            delta = min(delta, 0.5 * abs(edge - r))
    near = _near_panel(d, v, r, delta, tol)
    inner = _inner_part(d, v, r, r - delta, tol)
    outer = _outer_part(d, v, r, r + delta, tol)
    value = c_frac(d) * (near + inner + outer)
    logger.debug(f"flap N={d.N} s={d.s} {v.label} r={r}: near={near:.6e} inner={inner:.6e} "
                 f"outer={outer:.6e} -> {value:.12g}")
    return float(value)


def emden_residual(pp: ProblemParams, v: RadialFunction, r: float, tol: float = QUAD_TOL) -> float:
    """(−Δ)^s v + ε·sign(v)|v|^p в точке r."""
    vr = v.value(r)
    nonlinear = pp.eps * math.copysign(abs(vr) ** pp.p, vr) if vr != 0.0 else 0.0
    return frac_lap_radial(pp.d, v, r, tol) + nonlinear
