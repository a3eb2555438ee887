"""
Модуль poisson.py

Ядро Пуассона продолжения Каффарелли–Сильвестра
    P_s(x, z) = C_{N,s}·z^{2s}/(|x|² + z²)^{N/2+s},
его масса и свёртка u = P_s[v] радиального следа v.
C_{N,s} берётся в печатном виде ¼π^{(N+2−2s)/2}Γ((N−2s)/2); нормировку
обеспечивает численная масса ядра, сверенная с отношением печатной и
нормирующей констант.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, List

from scipy import integrate

from config.config import QUAD_TOL
from core.errors import ConsistencyError, DomainError
from extension.models import ExtensionPoint
from flap.models import RadialFunction, check_metadata
from quadrature.adaptive import adaptive_integrate
from quadrature.angular import sphere_mean
from specfun.gamma import sphere_measure
from specfun.models import DimPair

logger = logging.getLogger(__name__)

FAR_FACTOR = 64.0
MASS_RTOL = 1e-9


def poisson_constant_printed(d: DimPair) -> float:
    """¼π^{(N+2−2s)/2}Γ((N−2s)/2)."""
    N, s = d.N, d.s
    return 0.25 * math.pi ** ((N + 2.0 - 2.0 * s) / 2.0) * math.gamma((N - 2.0 * s) / 2.0)


def poisson_constant_normalizing(d: DimPair) -> float:
    """Γ(N/2+s)/(π^{N/2}Γ(s)): с этой константой масса ядра равна 1."""
    N, s = d.N, d.s
    return math.gamma(N / 2.0 + s) / (math.pi ** (N / 2.0) * math.gamma(s))


def poisson_kernel(d: DimPair, x_norm: float, z: float) -> float:
    if not z > 0.0:
        raise DomainError(f"Poisson kernel needs z > 0, got z={z}")
    q = d.N / 2.0 + d.s
    return poisson_constant_printed(d) * z ** (2.0 * d.s) / (x_norm * x_norm + z * z) ** q


@lru_cache(maxsize=32)
def kernel_mass(d: DimPair) -> float:
    """
    M = ∫_{ℝ^N} P_s(y, 1)dy радиальной квадратурой. Не зависит от z и должна
    равняться C_printed/C_normalizing; расхождение выше MASS_RTOL даёт
    ConsistencyError.
    """
    q = d.N / 2.0 + d.s
    area = sphere_measure(d.N)

    def f(rho):
        return area * rho ** (d.N - 1) * (rho * rho + 1.0) ** (-q)

    value, abserr = integrate.quad(f, 0.0, math.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    mass = poisson_constant_printed(d) * value
    closed = poisson_constant_printed(d) / poisson_constant_normalizing(d)
    logger.debug(f"Poisson kernel mass N={d.N} s={d.s}: {mass!r} (abserr {abserr:.1e}); closed form {closed!r}")
    if abs(mass - closed) > MASS_RTOL * closed:
        raise ConsistencyError(f"kernel mass {mass!r} differs from closed form {closed!r}")
    return mass


def _radial_breakpoints(x_norm: float, z: float, upper: float) -> List[float]:
    points = {x_norm}
    for k in (1.0, 4.0, 16.0):
        for p in (x_norm - k * z, x_norm + k * z):
            if 0.0 < p < upper:
                points.add(p)
    return sorted(p for p in points if 0.0 < p < upper)


def convolve_radial(d: DimPair, v: RadialFunction, x_norm: float, z: float,
                    power: float, tol: float) -> float:
    """
    ∫_{ℝ^N} v(y)·(|x−y|² + z²)^{−power}dy для радиальной v. Отрезки: [0, x+Kz]
    с изломами у |y| = |x| и в точках v.breaks, затем хвост.
    """
    N = d.N

    def f(rho: float) -> float:
        return v.value(rho) * rho ** (N - 1) * sphere_mean(N, x_norm, rho, power, z)

    far = FAR_FACTOR * (x_norm + z)
    end = far if v.cutoff is None else min(far, v.cutoff)
    inner_breaks = {b for b in v.breaks if 0.0 < b < end}
    edges = [0.0] + sorted(set(_radial_breakpoints(x_norm, z, end)) | inner_breaks) + [end]
    alpha = N - 1.0 + min(v.tau_origin, 0.0)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if a == 0.0 and alpha < 0.0:
            total += adaptive_integrate(f, a, b, tol=tol, endpoint_exponents=(alpha, 0.0), limit=400)
        else:
            total += adaptive_integrate(f, a, b, tol=tol, limit=400)
    if v.cutoff is None or v.cutoff > end:
        stop = math.inf if v.cutoff is None else v.cutoff
        outer = [end] + sorted(b for b in v.breaks if end < b < stop) + [stop]
        for a, b in zip(outer[:-1], outer[1:]):
            tail, _ = integrate.quad(f, a, b, epsabs=0.0, epsrel=tol, limit=400)
            total += tail
    return total


def extend_radial(d: DimPair, v: RadialFunction, x_norm: float, z: float,
                  normalized: bool = True, tol: float = QUAD_TOL) -> float:
    """
    u(x, z) = (P_s(·, z) * v)(x).

    Args:
        d: пара (N, s), N ≤ 3
        v: радиальный след из L¹_{μ_s}
        x_norm: |x|
        z: высота > 0
        normalized: делить ли на массу ядра (тогда u → v при z → 0)
        tol: допуск квадратуры

    Returns:
        Значение продолжения
    """
    if not z > 0.0:
        raise DomainError(f"extension needs z > 0, got z={z}")
    check_metadata(d, v)
    q = d.N / 2.0 + d.s
    value = poisson_constant_printed(d) * z ** (2.0 * d.s) * convolve_radial(d, v, x_norm, z, q, tol)
    if normalized:
        value /= kernel_mass(d)
    return float(value)


def make_extension(d: DimPair, v: RadialFunction, normalized: bool = True,
                   tol: float = QUAD_TOL) -> Callable[[float, float], float]:
    """Вычислитель (x, z) ↦ u(x, z) для harmonic_residual и сеточных проверок."""
    def u(x_norm: float, z: float) -> float:
        return extend_radial(d, v, x_norm, z, normalized, tol)
    return u


def extension_point(d: DimPair, v: RadialFunction, x_norm: float, z: float,
                    tol: float = QUAD_TOL) -> ExtensionPoint:
    value = extend_radial(d, v, x_norm, z, True, tol)
    return ExtensionPoint(x=x_norm, z=z, rho=math.hypot(x_norm, z), value=value)
