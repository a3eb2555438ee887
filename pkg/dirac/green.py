"""
Модуль green.py

Функция Грина дробного лапласиана в единичном шаре B₁ ⊂ ℝ^N
(классическое представление Бохио–Блюменталя–Гетура–Рэя):
    G(x, y) = a(N,s)|x−y|^{2s−N}·I_y(s, N/2−s),  y = P/(P + |x−y|²),
    P = (1−|x|²)(1−|y|²),
где a(N,s): константа рисзовского потенциала, I: регуляризованная неполная
бета-функция. Отсюда 0 < G ≤ a|x−y|^{2s−N}, а G[1] = γ(1−|x|²)^s.

Радиальное ядро ∫_{S^{N−1}} G(r e₁, ρσ)dσ считается как сферическое
среднее рисзовского потенциала (в замкнутой форме) минус гладкая поправка,
которая интегрируется фиксированным правилом Гаусса–Лежандра.
"""

import logging
import math
from functools import lru_cache

import numpy as np
from scipy import special

from config.config import QUAD_TOL
from core.errors import DomainError, SingularityError, UnsupportedDimensionError
from flap.models import RadialFunction
from quadrature.adaptive import adaptive_integrate
from specfun.gamma import riesz_constant
from specfun.models import DimPair

logger = logging.getLogger(__name__)

CORRECTION_NODES = 48


def free_green(d: DimPair, r):
    """G_s(r) = a(N,s)·r^{2s−N}."""
    return riesz_constant(d) * np.asarray(r, dtype=float) ** (2.0 * d.s - d.N)


def torsion(d: DimPair, r):
    """G[1](r) = Γ(N/2)/(2^{2s}Γ(1+s)Γ(N/2+s))·(1−r²)^s."""
    N, s = d.N, d.s
    gamma = math.gamma(N / 2.0) / (2.0 ** (2.0 * s) * math.gamma(1.0 + s) * math.gamma(N / 2.0 + s))
    r = np.asarray(r, dtype=float)
    return gamma * np.clip(1.0 - r * r, 0.0, None) ** s


def _check_inside(*norms: float) -> None:
    for value in norms:
        if not 0.0 <= value < 1.0:
            raise DomainError(f"point with |x|={value} is not inside the unit ball")


def green_kernel(d: DimPair, x, y) -> float:
    """G(x, y) для точек шара (векторы длины N или числа при N = 1)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != (d.N,) or y.shape != (d.N,):
        raise DomainError(f"points must have {d.N} coordinates")
    rx, ry = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    _check_inside(rx, ry)
    dist2 = float(np.sum((x - y) ** 2))
    if dist2 == 0.0:
        raise SingularityError("Green function evaluated on its diagonal")
    big_p = (1.0 - rx * rx) * (1.0 - ry * ry)
    profile = special.betainc(d.s, d.N / 2.0 - d.s, big_p / (big_p + dist2))
    return float(riesz_constant(d) * dist2 ** (d.s - d.N / 2.0) * profile)


def green_ball(d: DimPair, x_norm: float, y_norm: float = 0.0) -> float:
    """
    G(x_norm·e₁, y_norm·e₁); по умолчанию полюс в нуле:
    G(x, 0) = a·r^{2s−N}·I_{1−r²}(s, N/2−s).
    """
    if not 0.0 < x_norm < 1.0:
        raise DomainError(f"x_norm={x_norm} must lie in (0, 1)")
    return green_kernel(d, np.eye(d.N)[0] * x_norm, np.eye(d.N)[0] * y_norm)


def green_origin(d: DimPair, r: np.ndarray) -> np.ndarray:
    """Векторизованная G(r, 0) на узлах из (0, 1)."""
    r = np.asarray(r, dtype=float)
    return free_green(d, r) * special.betainc(d.s, d.N / 2.0 - d.s, 1.0 - r * r)


def riesz_mean(N: int, r, rho, power: float):
    """
    ∫_{S^{N−1}} |r e₁ − ρσ|^{−2·power} dσ, векторизованно по r и ρ.
    N = 1, 3 в замкнутой форме, N = 2 через ₂F₁.
    """
    r, rho = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(rho, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        if N == 1:
            return np.abs(r - rho) ** (-2.0 * power) + (r + rho) ** (-2.0 * power)
        a = r * r + rho * rho
        b = 2.0 * r * rho
        if N == 2:
            return 2.0 * math.pi * a ** (-power) * special.hyp2f1(
                0.5 * power, 0.5 * power + 0.5, 1.0, (b / a) ** 2)
        if N == 3:
            plus, minus = (r + rho) ** 2, (r - rho) ** 2
            small = b <= 1e-6 * a
            safe_b = np.where(small, 1.0, b)
            if abs(power - 1.0) < 1e-14:
                closed = 2.0 * math.pi * (np.log(plus) - np.log(minus)) / safe_b
            else:
                closed = 2.0 * math.pi * (plus ** (1.0 - power) - minus ** (1.0 - power)) / (
                    safe_b * (1.0 - power))
            series = 4.0 * math.pi * a ** (-power) * (1.0 + power * (power + 1.0) * b * b / (6.0 * a * a))
            return np.where(small, series, closed)
    raise UnsupportedDimensionError(f"Riesz sphere means are implemented for N<=3, got N={N}")


@lru_cache(maxsize=8)
def _sphere_nodes(N: int, n: int):
    """(cos θ, вес) для ∫_{S^{N−1}} с узлами, сгущёнными к θ = 0."""
    x, w = np.polynomial.legendre.leggauss(n)
    u = 0.5 * (1.0 + x)
    w = 0.5 * w
    if N == 2:
        # θ = πu², полная окружность = 2∫_0^π
        theta = math.pi * u * u
        return np.cos(theta), 2.0 * 2.0 * math.pi * u * w
    # c = 1 − 2u², dσ = 2π dc
    return 1.0 - 2.0 * u * u, 2.0 * math.pi * 4.0 * u * w


def _correction(d: DimPair, dist2: np.ndarray, big_p: np.ndarray) -> np.ndarray:
    # a·|x−y|^{2s−N}(1 − I_y(s, N/2−s)), гладкая по |x−y|²
    N, s = d.N, d.s
    a = N / 2.0 - s
    with np.errstate(divide="ignore", invalid="ignore"):
        value = dist2 ** (s - N / 2.0) * special.betainc(a, s, dist2 / (dist2 + big_p))
    limit = big_p ** (-a) / (a * special.beta(a, s))
    return np.where(dist2 > 0.0, value, limit)


def correction_mean(d: DimPair, r, rho, nodes: int = CORRECTION_NODES) -> np.ndarray:
    """∫_{S^{N−1}} |x−y|^{2s−N}(1 − I(s, N/2−s)) dσ, x = r e₁, y = ρσ (без множителя a)."""
    r, rho = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(rho, dtype=float))
    big_p = (1.0 - r * r) * (1.0 - rho * rho)
    if d.N == 1:
        return (_correction(d, (r - rho) ** 2, big_p) + _correction(d, (r + rho) ** 2, big_p))
    if d.N not in (2, 3):
        raise UnsupportedDimensionError(f"ball Green kernels are implemented for N<=3, got N={d.N}")
    cos_theta, weights = _sphere_nodes(d.N, nodes)
    dist2 = (r - rho)[..., None] ** 2 + 2.0 * (r * rho)[..., None] * (1.0 - cos_theta)
    return np.sum(_correction(d, dist2, big_p[..., None]) * weights, axis=-1)


def radial_green_kernel(d: DimPair, r, rho) -> np.ndarray:
    """Ḡ(r, ρ) = ∫_{S^{N−1}} G(r e₁, ρσ)dσ; бесконечно (или велико) при r = ρ, если 2s ≤ 1."""
    riesz = riesz_mean(d.N, r, rho, (d.N - 2.0 * d.s) / 2.0)
    return riesz_constant(d) * (riesz - correction_mean(d, r, rho))


def green_apply(d: DimPair, f: RadialFunction, x_norm: float, tol: float = QUAD_TOL) -> float:
    """
    G[f](x) = ∫_{B₁} G(x, y) f(|y|) dy.

    Особенность ядра на диагонали снимается вычитанием:
        ∫Ḡ(x, ρ)(f(ρ) − f(x))ρ^{N−1}dρ + f(x)·G[1](x).

    Args:
        d: пара (N, s)
        f: радиальная функция на (0, 1)
        x_norm: |x| ∈ (0, 1)
        tol: допуск квадратуры

    Returns:
        Значение G[f](x)
    """
    if not 0.0 < x_norm < 1.0:
        raise DomainError(f"x_norm={x_norm} must lie in (0, 1)")
    fx = f.value(x_norm)

    def integrand(rho: float) -> float:
        if rho == x_norm or rho >= 1.0:
            return 0.0
        diff = f.value(rho) - fx
        if diff == 0.0:
            return 0.0
        return float(radial_green_kernel(d, x_norm, rho)) * diff * rho ** (d.N - 1)

    breaks = sorted(b for b in set(f.breaks) | ({f.cutoff} if f.cutoff is not None else set())
                    if 0.0 < b < 1.0 and b != x_norm)
    edges = [0.0] + [b for b in breaks if b < x_norm] + [x_norm] + [b for b in breaks if b > x_norm] + [1.0]
    total = 0.0
    for left, right in zip(edges[:-1], edges[1:]):
        total += adaptive_integrate(integrand, left, right, tol=tol, limit=400)
    value = total + fx * float(torsion(d, x_norm))
    logger.debug(f"green_apply N={d.N} s={d.s} {f.label} x={x_norm}: {value:.12g}")
    return value
