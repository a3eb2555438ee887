"""
Модуль solver.py

Радиальные решения задачи (−Δ)^s v + v^p = kδ₀ в единичном шаре:
    v = kG(·, 0) − G[v^p],
итерация Пикара v_{n+1} = kG(·,0) − G[v_n^p] с v₀ = kG(·,0) (чередующиеся
монотонные приближения) и демпфированный Ньютон, если вилка не сужается.
Предел v_∞ при k → ∞ ищется лестницей k = 2^j.

Дискретизация: метод Нистрёма на логарифмической сетке с вычитанием
особенности ядра на диагонали. Сетка продолжается к нулю до радиуса, где
нелинейность пренебрежима и v ≈ kG; вклад шара под сеткой берётся по
асимптотике v^p ~ r^{−p(N−2s)}.
"""

import logging
import math
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from config.config import DIRAC_NODES, NEWTON_TOL
from core.errors import ConvergenceError, DomainError, RegimeError
from dirac.green import green_origin, radial_green_kernel, torsion
from dirac.models import DiracSolution, VInfinityReport
from params.exponents import critical_fractions
from params.models import ProblemParams, Regime
from params.regime import CLAUSES, compare_exponent, regime
from params.self_similar import c_p
from solvers.newton import damped_newton
from specfun.gamma import riesz_constant, sphere_measure
from specfun.models import DimPair

logger = logging.getLogger(__name__)

GRID_MIN = 1e-4
DIRAC_TOL = 1e-10
PICARD_MAX = 200
# вилка должна сужаться хотя бы вдвое за STALL_WINDOW шагов
STALL_WINDOW = 10
EXTENSION_PER_DECADE = 8
MAX_EXTENSION_DECADES = 80
# v^{p−1}r^{2s} ≤ LINEAR_SCALE на продолжении сетки
LINEAR_SCALE = 1e-3
SATURATION_TOL = 1e-3
SATURATION_RADIUS = 1e-3
LADDER_EXPONENTS = 40


def radial_grid(n: int = DIRAC_NODES, r_min: float = GRID_MIN) -> np.ndarray:
    """n логарифмически равномерных узлов в [r_min, 1)."""
    if n < 8 or not 0.0 < r_min < 1.0:
        raise ValueError(f"radial grid needs n >= 8 and 0 < r_min < 1, got n={n}, r_min={r_min}")
    return np.geomspace(r_min, 1.0, n + 1)[:-1]


def require_dirac_regime(pp: ProblemParams) -> None:
    if pp.eps != 1:
        raise DomainError("the Dirac mass problem is posed for eps=+1")
    if compare_exponent(pp.p, critical_fractions(pp.d)["p_serrin"]) >= 0:
        raise RegimeError(f"p={pp.p} is not below p_serrin", clause=CLAUSES["dirac_serrin"])


def extension_nodes(pp: ProblemParams, k: float, r_min: float) -> np.ndarray:
    """Узлы под r_min, на которых (ka r^{2s−N})^{p−1}r^{2s} ≤ LINEAR_SCALE."""
    d = pp.d
    if k <= 0.0:
        return np.empty(0)
    exponent = 2.0 * d.s - (d.N - 2.0 * d.s) * (pp.p - 1.0)
    scale = (k * riesz_constant(d)) ** (pp.p - 1.0)
    floor = (LINEAR_SCALE / scale) ** (1.0 / exponent)
    decades = math.ceil(math.log10(r_min / floor)) if floor < r_min else 0
    if decades > MAX_EXTENSION_DECADES:
        logger.warning(f"Dirac grid extension k={k:g} p={pp.p} needs {decades} decades, "
                       f"capped at {MAX_EXTENSION_DECADES}")
        decades = MAX_EXTENSION_DECADES
    steps = np.arange(decades * EXTENSION_PER_DECADE, 0, -1)
    return r_min * 10.0 ** (-steps / EXTENSION_PER_DECADE)


def quadrature_weights(d: DimPair, nodes: np.ndarray, tail_exponent: float) -> np.ndarray:
    """
    Веса ∫_0^1 g(ρ)ρ^{N−1}dρ ≈ Σ w_j g(ρ_j): трапеции по ln ρ (g(1) = 0)
    и степенной хвост g ~ ρ^{−tail_exponent} на (0, ρ₀).
    """
    t = np.log(nodes)
    padded = np.concatenate([[t[0]], t, [0.0]])
    w = 0.5 * (padded[2:] - padded[:-2]) * nodes ** d.N
    w[0] += nodes[0] ** d.N / (d.N - tail_exponent)
    return w


@lru_cache(maxsize=8)
def _nystrom_matrix(d: DimPair, nodes: Tuple[float, ...], tail_exponent: float) -> np.ndarray:
    r = np.array(nodes)
    weights = quadrature_weights(d, r, tail_exponent)
    matrix = np.empty((len(r), len(r)))
    with np.errstate(divide="ignore", invalid="ignore"):
        for i, ri in enumerate(r):
            row = radial_green_kernel(d, ri, r) * weights
            row[i] = 0.0
            matrix[i] = row
    matrix[np.diag_indices_from(matrix)] = torsion(d, r) - matrix.sum(axis=1)
    matrix.setflags(write=False)
    logger.debug(f"Nystrom matrix N={d.N} s={d.s}: {len(r)} nodes from {r[0]:.3e}")
    return matrix


def green_matrix(pp: ProblemParams, nodes: np.ndarray) -> np.ndarray:
    """M: (M g)_i ≈ G[g](r_i) с вычтенной диагональю."""
    return _nystrom_matrix(pp.d, tuple(float(x) for x in nodes), pp.p * (pp.N - 2.0 * pp.s))


def _picard(matrix: np.ndarray, base: np.ndarray, p: float, tol: float):
    u = np.ones_like(base)
    widths = []
    for it in range(1, PICARD_MAX + 1):
        u_new = 1.0 - matrix @ (np.maximum(base * u, 0.0) ** p) / base
        width = float(np.max(np.abs(u_new - u)))
        widths.append(width)
        u = u_new
        logger.debug(f"Picard step {it}: bracket width {width:.3e}")
        if width < tol:
            return u, it, width, True
        if it > STALL_WINDOW and width > 0.5 * widths[-STALL_WINDOW - 1]:
            logger.info(f"Picard bracket stalls at width {width:.3e} after {it} steps, switching to Newton")
            return u, it, width, False
    return u, PICARD_MAX, widths[-1], False


def _newton(matrix: np.ndarray, base: np.ndarray, p: float, u0: np.ndarray, tol: float):
    base_p = base ** p

    def residual(u):
        return u - 1.0 + matrix @ (np.maximum(base * u, 0.0) ** p) / base

    def jacobian(u):
        slope = p * base_p * np.maximum(u, 0.0) ** (p - 1.0)
        return np.eye(len(u)) + matrix * slope[None, :] / base[:, None]

    return damped_newton(residual, jacobian, u0, tol=tol)


def _interpolate_guess(guess: DiracSolution, nodes: np.ndarray, base: np.ndarray) -> np.ndarray:
    values = np.interp(np.log(nodes), np.log(guess.full_grid), guess.full_v, left=np.nan)
    u = np.where(np.isnan(values), 1.0, values / base)
    return np.clip(u, 0.0, 1.0)


def solve_dirac(pp: ProblemParams, k: float, grid: Optional[np.ndarray] = None, tol: float = DIRAC_TOL,
                guess: Optional[DiracSolution] = None) -> DiracSolution:
    """
    Решение с массой k.

    Args:
        pp: параметры, ε = +1, 1 < p < p_serrin
        k: масса дельта-функции, k ≥ 0
        grid: радиальная сетка в (0, 1), по умолчанию radial_grid()
        tol: порог ширины вилки Пикара (в единицах kG)
        guess: решение для меньшего k (старт Ньютона на лестнице k)

    Returns:
        DiracSolution
    """
    require_dirac_regime(pp)
    if not k >= 0.0 or not math.isfinite(k):
        raise DomainError(f"mass k must be finite and nonnegative, got {k}")
    grid = radial_grid() if grid is None else np.asarray(grid, dtype=float)
    if not (np.all(grid > 0.0) and np.all(grid < 1.0) and np.all(np.diff(grid) > 0.0)):
        raise DomainError("Dirac grid must be increasing inside (0, 1)")
    tail = pp.p * (pp.N - 2.0 * pp.s)
    if k == 0.0:
        zeros = np.zeros_like(grid)
        return DiracSolution(pp=pp, k=0.0, r_grid=grid, v=zeros, full_grid=grid, full_v=zeros,
                             weights=quadrature_weights(pp.d, grid, tail), bounds_ok=True, monotone=True,
                             sandwich_constant=0.0, bracket_width=0.0, iterations=0, method="trivial")

    nodes = np.concatenate([extension_nodes(pp, k, float(grid[0])), grid])
    matrix = green_matrix(pp, nodes)
    base = k * green_origin(pp.d, nodes)

    method, iterations, width = "picard", 0, math.inf
    converged = False
    if guess is None:
        u, iterations, width, converged = _picard(matrix, base, pp.p, tol)
        start = u
    else:
        start = _interpolate_guess(guess, nodes, base)
    if not converged:
        method = "newton"
        try:
            u, steps, width = _newton(matrix, base, pp.p, start, max(tol, NEWTON_TOL))
        except ConvergenceError:
            if guess is None:
                raise
            logger.warning(f"Newton from the ladder guess failed at k={k:g}, restarting from kG")
            u, steps, width, converged = _picard(matrix, base, pp.p, tol)
            if not converged:
                u, steps, width = _newton(matrix, base, pp.p, u, max(tol, NEWTON_TOL))
        iterations += steps

    full_v = base * u
    n_ext = len(nodes) - len(grid)
    v = full_v[n_ext:]
    slack = max(tol, NEWTON_TOL) * 10.0
    bounds_ok = bool(np.all(u >= -slack) and np.all(u <= 1.0 + slack))
    monotone = bool(np.all(np.diff(v) <= slack * np.max(np.abs(v))))
    sandwich = float(np.max((base[n_ext:] - v) / k ** pp.p))
    if not bounds_ok or not monotone:
        logger.warning(f"Dirac solution k={k:g} p={pp.p}: bounds_ok={bounds_ok} monotone={monotone}")
    logger.info(f"Dirac solve N={pp.N} s={pp.s} p={pp.p} k={k:g}: {method}, {iterations} iterations, "
                f"{len(nodes)} nodes, width={width:.3e}, sandwich constant={sandwich:.6g}")
    return DiracSolution(pp=pp, k=k, r_grid=grid, v=v, full_grid=nodes, full_v=full_v,
                         weights=quadrature_weights(pp.d, nodes, tail), bounds_ok=bounds_ok,
                         monotone=monotone, sandwich_constant=sandwich, bracket_width=width,
                         iterations=iterations, method=method)


def log_mass_diagnostic(sol: DiracSolution) -> float:
    """∫_{B₁} v_k^p dx; конечен при p < p_serrin и не превосходит k."""
    pp = sol.pp
    return float(sphere_measure(pp.N) * np.dot(sol.weights, np.maximum(sol.full_v, 0.0) ** pp.p))


def _limit_report(pp: ProblemParams, sol: DiracSolution, report: VInfinityReport) -> VInfinityReport:
    gamma = 2.0 * pp.s / (pp.p - 1.0)
    const = c_p(pp)
    r, v = sol.r_grid, sol.v
    scaled = r ** gamma * v
    sample_radius = report.limit_radius
    ratio = float(np.exp(np.interp(math.log(sample_radius), np.log(r), np.log(np.maximum(scaled, 1e-300))))) / const
    u_p = const * r ** (-gamma)
    return report.model_copy(update={
        "limit_ratio": ratio,
        "small_radius_ratios": [(float(x), float(y / const)) for x, y in zip(r[:5], scaled[:5])],
        "upper_margin": float(np.max((v - u_p) / u_p)),
        "c_star": float(np.max(u_p - v)),
    })


def v_infinity(pp: ProblemParams, grid: Optional[np.ndarray] = None,
               k_ladder: Optional[Sequence[float]] = None,
               tol: float = SATURATION_TOL) -> Tuple[DiracSolution, VInfinityReport]:
    """
    Предел v_k при k → ∞ по лестнице k (по умолчанию 2^j, j = 0..40).

    Насыщение: относительное изменение между соседними ступенями < tol во всех
    узлах с r ≥ 1e−3. Без насыщения режим отмечается как неограниченный
    (v_∞ = ∞ при p ≤ p_weak), это не ошибка.

    Returns:
        (решение на последней ступени, отчёт)
    """
    grid = radial_grid() if grid is None else np.asarray(grid, dtype=float)
    ladder = list(k_ladder) if k_ladder is not None else [2.0 ** j for j in range(LADDER_EXPONENTS + 1)]
    if not ladder or ladder[0] <= 0.0 or any(b <= a for a, b in zip(ladder[:-1], ladder[1:])):
        raise DomainError(f"k ladder must be a non-empty increasing sequence of positive masses, got {ladder}")
    mask = grid >= SATURATION_RADIUS
    if not np.any(mask):
        raise DomainError(f"grid has no nodes at r >= {SATURATION_RADIUS}")
    sample_index = int(np.argmax(mask))

    prev: Optional[DiracSolution] = None
    changes = []
    growth = None
    saturated = False
    for rung, k in enumerate(ladder, start=1):
        sol = solve_dirac(pp, k, grid, guess=prev)
        if prev is not None:
            change = float(np.max(np.abs(sol.v[mask] - prev.v[mask]) / sol.v[mask]))
            changes.append(change)
            growth = math.log(sol.v[sample_index] / prev.v[sample_index]) / math.log(k / prev.k)
            logger.debug(f"v_infinity rung k={k:g}: relative change {change:.3e}")
            if change < tol:
                saturated = True
                prev = sol
                break
        prev = sol

    report = VInfinityReport(saturated=saturated, regime="bounded" if saturated else "unbounded",
                             k_final=prev.k, rungs=rung, changes=changes, limit_radius=SATURATION_RADIUS,
                             growth_exponent=growth)
    if saturated and regime(pp) == Regime.UNIQUE_PROFILE_EF:
        report = _limit_report(pp, prev, report)
        logger.info(f"v_infinity N={pp.N} s={pp.s} p={pp.p}: saturated at k={prev.k:g}, "
                    f"r^(2s/(p-1)) v / c_p at {SATURATION_RADIUS} = {report.limit_ratio:.6f}")
    elif not saturated:
        logger.warning(f"v_infinity N={pp.N} s={pp.s} p={pp.p}: no saturation up to k={prev.k:g} "
                       f"(growth exponent {growth}), unbounded regime")
    return prev, report
