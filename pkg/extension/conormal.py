"""
Модуль conormal.py

Взвешенная конормальная производная −lim_{z→0} z^{1−2s}u_z нормированного
продолжения, конечно-разностная невязка вырожденно-гармонического уравнения
div(z^{1−2s}∇u) = 0 и проверка априорной оценки продолжения степенного следа.
"""

import logging
import math
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from config.config import QUAD_TOL
from core.errors import ConvergenceError, DomainError
from extension.models import ConormalEstimate, ExtensionPoint, LiftingReport
from extension.poisson import convolve_radial, extend_radial, kernel_mass, poisson_constant_printed
from flap.models import RadialFunction, combine, constant_function
from params.models import ProblemParams
from specfun.gamma import extension_constant
from specfun.models import DimPair

logger = logging.getLogger(__name__)

LADDER_LEVELS = 10
LADDER_START = 0.25
FIT_RTOL = 1e-3


def _weighted_z_derivative(d: DimPair, w: RadialFunction, x_norm: float, z: float, tol: float) -> float:
    # z^{1−2s}∂_z[z^{2s}(|y|²+z²)^{−q}] = 2s(|y|²+z²)^{−q} − 2q z²(|y|²+z²)^{−q−1}
    q = d.N / 2.0 + d.s
    first = convolve_radial(d, w, x_norm, z, q, tol)
    second = convolve_radial(d, w, x_norm, z, q + 1.0, tol)
    return poisson_constant_printed(d) * (2.0 * d.s * first - 2.0 * q * z * z * second)


def conormal_ladder(d: DimPair, v: RadialFunction, x_norm: float, tol: float = QUAD_TOL,
                    levels: int = LADDER_LEVELS) -> ConormalEstimate:
    """
    −z^{1−2s}u_z на лестнице z_k = z₀2^{−k} и её предел при z → 0.

    Масса ядра постоянна по z, поэтому из следа вычитается v(x). Предел
    берётся подгонкой g(z) = g₀ + g₁z^{2−2s} + g₂z² + g₃z^{4−2s}.
    """
    if not x_norm > 0.0:
        raise DomainError(f"conormal derivative needs |x| > 0, got {x_norm}")
    w = combine(1.0, v, -v.value(x_norm), constant_function(1.0))
    mass = kernel_mass(d)
    z0 = LADDER_START * x_norm
    ladder = [z0 * 2.0 ** (-k) for k in range(levels)]
    samples = [-_weighted_z_derivative(d, w, x_norm, z, tol) / mass for z in ladder]
    e = 2.0 - 2.0 * d.s
    exponents = sorted({e, 2.0, 2.0 + e})
    zs = np.array(ladder) / z0
    basis = np.column_stack([np.ones_like(zs)] + [zs ** x for x in exponents])
    coef, *_ = np.linalg.lstsq(basis, np.array(samples), rcond=None)
    fitted = basis @ coef
    residual = float(np.sqrt(np.mean((fitted - samples) ** 2)))
    scale = max(abs(float(coef[0])), float(np.max(np.abs(samples))), 1e-300)
    if not math.isfinite(coef[0]) or residual > FIT_RTOL * scale:
        raise ConvergenceError(f"conormal ladder at x={x_norm} does not fit the boundary expansion: "
                               f"rms={residual:.3e}, scale={scale:.3e}")
    raw = float(coef[0])
    value = raw / extension_constant(d)
    logger.debug(f"conormal N={d.N} s={d.s} {v.label} x={x_norm}: raw={raw:.12g} value={value:.12g} "
                 f"rms={residual:.2e}")
    return ConormalEstimate(x=x_norm, z_ladder=ladder, samples=samples, raw_limit=raw,
                            value=value, fit_residual=residual)


def conormal_derivative(d: DimPair, v: RadialFunction, x_norm: float, tol: float = QUAD_TOL) -> float:
    """(−Δ)^s v(x) как −lim z^{1−2s}u_z/κ_s нормированного продолжения."""
    return conormal_ladder(d, v, x_norm, tol).value


def harmonic_residual(d: DimPair, u: Callable[[float, float], float], x_norm: float, z: float,
                      h: float) -> float:
    """
    u_zz + ((1−2s)/z)u_z + u_xx + ((N−1)/x)u_x центральными разностями с шагом h.
    """
    if not z > 2.0 * h:
        raise DomainError(f"harmonic residual needs z > 2h, got z={z}, h={h}")
    if not x_norm > h:
        raise DomainError(f"harmonic residual needs |x| > h, got x={x_norm}, h={h}")
    center = u(x_norm, z)
    up, down = u(x_norm, z + h), u(x_norm, z - h)
    right, left = u(x_norm + h, z), u(x_norm - h, z)
    u_zz = (up - 2.0 * center + down) / (h * h)
    u_z = (up - down) / (2.0 * h)
    u_xx = (right - 2.0 * center + left) / (h * h)
    u_x = (right - left) / (2.0 * h)
    return u_zz + (1.0 - 2.0 * d.s) / z * u_z + u_xx + (d.N - 1.0) / x_norm * u_x


DEFAULT_LIFTING_GRID = tuple((x, z) for x in (0.25, 0.5, 1.0, 2.0) for z in (0.25, 0.5, 1.0, 2.0))


def lifting_bound(pp: ProblemParams, v: RadialFunction,
                  grid: Optional[Iterable[Tuple[float, float]]] = None,
                  tol: float = 1e-8) -> LiftingReport:
    """
    sup u(x,z)·(|x|²+z²)^{s/(p−1)} по сетке для следа с |v| ≤ c|x|^{−2s/(p−1)}
    и константа следа c = sup|v(r)|r^{2s/(p−1)} по пробным радиусам.
    """
    d = pp.d
    gamma = 2.0 * d.s / (pp.p - 1.0)
    radii = np.geomspace(1e-3, 1e3, 25)
    trace_constant = float(max(abs(v.value(r)) * r ** gamma for r in radii))
    points = []
    ratio_max = 0.0
    for x_norm, z in (grid or DEFAULT_LIFTING_GRID):
        value = extend_radial(d, v, x_norm, z, True, tol)
        rho = math.hypot(x_norm, z)
        points.append(ExtensionPoint(x=x_norm, z=z, rho=rho, value=value))
        ratio_max = max(ratio_max, value * rho ** gamma)
    logger.info(f"lifting bound N={d.N} s={d.s} p={pp.p}: sup ratio={ratio_max:.6g}, "
                f"trace constant={trace_constant:.6g}")
    return LiftingReport(ratio_max=ratio_max, trace_constant=trace_constant, points=points)
