"""
Модуль grid.py

Сетка по φ ∈ [0, π/2] для автомодельных профилей и моменты ячеек
продукт-интегрирования. Сетка сгущается к границе φ = 0 степенным законом
φ_j = (π/2)(j/n)^q, q = max(1, 1/s), и дополняется геометрическими узлами
φ_1·2^{−k} внутри первой ячейки для экстраполяции конормальной производной.
"""

import logging
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import integrate, special

from specfun.models import DimPair

logger = logging.getLogger(__name__)

GEOMETRIC_LEVELS = 12
MOMENT_RTOL = 1e-12


class CellMoments(NamedTuple):
    grid: np.ndarray
    alpha: np.ndarray   # ∫ W·(φ_{k+1}−θ)/h по ячейке k
    beta: np.ndarray    # ∫ W·(θ−φ_k)/h
    gamma: np.ndarray   # то же для B·μ
    delta: np.ndarray
    mu: np.ndarray      # μ(φ_j) = ∫_{φ_j}^{π/2} W, из тех же моментов
    boundary_s: np.ndarray  # S(φ_j) = ∫_0^{φ_j} B, только у границы (иначе nan)


def profile_grid(d: DimPair, n: int) -> np.ndarray:
    """Узлы 0 = φ_0 < … < φ_last = π/2."""
    q = max(1.0, 1.0 / d.s)
    graded = 0.5 * np.pi * (np.arange(n + 1) / n) ** q
    extra = graded[1] * 2.0 ** (-np.arange(GEOMETRIC_LEVELS, 0, -1))
    return np.concatenate([[0.0], extra, graded[1:]])


def density(d: DimPair, theta: float) -> float:
    """W(θ) = (sinθ)^{1−2s}(cosθ)^{N−1}."""
    return np.sin(theta) ** (1.0 - 2.0 * d.s) * np.cos(theta) ** (d.N - 1)


def tail_mass(d: DimPair, sigma: float) -> float:
    """μ(σ) = ∫_σ^{π/2} W = ½B(N/2, 1−s)·I_{cos²σ}(N/2, 1−s)."""
    a, b = d.N / 2.0, 1.0 - d.s
    return 0.5 * special.beta(a, b) * special.betainc(a, b, np.cos(sigma) ** 2)


def _quad(f, a, b, weight_exponent=None):
    if weight_exponent is None:
        value, _ = integrate.quad(f, a, b, epsabs=0.0, epsrel=MOMENT_RTOL, limit=200)
    else:
        value, _ = integrate.quad(f, a, b, weight="alg", wvar=(weight_exponent, 0.0),
                                  epsabs=0.0, epsrel=MOMENT_RTOL, limit=200)
    return value


@lru_cache(maxsize=32)
def cell_moments(d: DimPair, n: int) -> CellMoments:
    """Моменты ячеек для сетки profile_grid(d, n); кешируются по (d, n)."""
    s, N = d.s, d.N
    grid = profile_grid(d, n)
    cells = len(grid) - 1
    alpha = np.empty(cells)
    beta = np.empty(cells)
    gamma = np.empty(cells)
    delta = np.empty(cells)

    def w_regular(t):
        # W без множителя t^{1−2s}; np.sinc(t/π) = sin t / t
        return np.sinc(t / np.pi) ** (1.0 - 2.0 * s) * np.cos(t) ** (N - 1)

    def bmu_regular(t):
        return np.sinc(t / np.pi) ** (2.0 * s - 1.0) * np.cos(t) ** (1 - N) * tail_mass(d, t)

    def bmu(t):
        return np.sin(t) ** (2.0 * s - 1.0) * np.cos(t) ** (1 - N) * tail_mass(d, t)

    for k in range(cells):
        left, right = grid[k], grid[k + 1]
        h = right - left
        if k == 0:
            alpha[k] = _quad(lambda t: w_regular(t) * (right - t) / h, left, right, 1.0 - 2.0 * s)
            beta[k] = _quad(lambda t: w_regular(t) * (t - left) / h, left, right, 1.0 - 2.0 * s)
            gamma[k] = _quad(lambda t: bmu_regular(t) * (right - t) / h, left, right, 2.0 * s - 1.0)
            delta[k] = _quad(lambda t: bmu_regular(t) * (t - left) / h, left, right, 2.0 * s - 1.0)
        else:
            alpha[k] = _quad(lambda t: density(d, t) * (right - t) / h, left, right)
            beta[k] = _quad(lambda t: density(d, t) * (t - left) / h, left, right)
            gamma[k] = _quad(lambda t: bmu(t) * (right - t) / h, left, right)
            delta[k] = _quad(lambda t: bmu(t) * (t - left) / h, left, right)

    mass = alpha + beta
    mu = np.concatenate([np.cumsum(mass[::-1])[::-1], [0.0]])

    boundary_s = np.full(len(grid), np.nan)
    boundary_s[0] = 0.0
    running = 0.0
    for k in range(cells):
        if grid[k + 1] > 0.5:
            break
        left, right = grid[k], grid[k + 1]
        if k == 0:
            running += _quad(lambda t: np.sinc(t / np.pi) ** (2.0 * s - 1.0) * np.cos(t) ** (1 - N),
                             left, right, 2.0 * s - 1.0)
        else:
            running += _quad(lambda t: np.sin(t) ** (2.0 * s - 1.0) * np.cos(t) ** (1 - N), left, right)
        boundary_s[k + 1] = running

    logger.debug(f"cell moments N={N} s={s} n={n}: {cells} cells, mass={mu[0]}")
    for arr in (grid, alpha, beta, gamma, delta, mu, boundary_s):
        arr.setflags(write=False)
    return CellMoments(grid, alpha, beta, gamma, delta, mu, boundary_s)
