"""
Модуль picard.py

Оператор Пикара для радиального профиля на полусфере,
    T[ω](φ) = a − Λ∫_φ^{π/2} B(σ) ∫_σ^{π/2} ω(θ)W(θ) dθ dσ,
    W = (sinθ)^{1−2s}(cosθ)^{N−1},  B = 1/W,
его неподвижная точка и взвешенная конормальная производная в φ = 0.

Дискретизация: продукт-интегрирование кусочно-линейной интерполяции ω по
внутреннему интегралу и кусочно-линейной интерполяции J = I/μ по внешнему
(μ(σ) = ∫_σ^{π/2} W). Схема точна на константах.
"""

import logging
from typing import Optional

import numpy as np

from config.config import CONORMAL_RTOL, PROFILE_GRID, PROFILE_TOL
from core.errors import ConsistencyError, ConvergenceError
from params.exponents import lambda_coefficient
from params.models import ProblemParams, Regime
from params.regime import regime
from profiles.grid import GEOMETRIC_LEVELS, cell_moments, profile_grid
from profiles.models import Profile

logger = logging.getLogger(__name__)

MAX_PICARD_ITERATIONS = 200
EXTRAPOLATION_MIN_S = 1e-14


def inner_integrals(moments, values: np.ndarray) -> np.ndarray:
    """I_j = ∫_{φ_j}^{π/2} ωW для кусочно-линейной ω."""
    cell = moments.alpha * values[:-1] + moments.beta * values[1:]
    return np.concatenate([np.cumsum(cell[::-1])[::-1], [0.0]])


def cell_increments(moments, values: np.ndarray) -> np.ndarray:
    """∫ по ячейке k от B·I: приращение внешнего интеграла, I/μ линейна на ячейке."""
    inner = inner_integrals(moments, values)
    ratio = np.empty_like(values)
    ratio[:-1] = inner[:-1] / moments.mu[:-1]
    ratio[-1] = values[-1]
    return moments.gamma * ratio[:-1] + moments.delta * ratio[1:]


def _apply_operator(moments, values: np.ndarray, a: float, lam: float) -> np.ndarray:
    cell = cell_increments(moments, values)
    outer = np.concatenate([np.cumsum(cell[::-1])[::-1], [0.0]])
    return a - lam * outer


def make_profile(pp: ProblemParams, n: int, values: np.ndarray, a: Optional[float] = None,
                 lam: Optional[float] = None, **extra) -> Profile:
    """Обёртка значений на стандартной сетке в Profile."""
    values = np.asarray(values, dtype=float)
    return Profile(
        pp=pp, n=n, grid=profile_grid(pp.d, n), values=values, omega0=float(values[0]),
        a=float(values[-1]) if a is None else a,
        lam=lambda_coefficient(pp.d, pp.p) if lam is None else lam, **extra,
    )


def picard_T(pp: ProblemParams, w: Profile) -> Profile:
    """Одно применение оператора T на сетке профиля w (Λ = w.lam, a = w.a)."""
    moments = cell_moments(pp.d, w.n)
    new_values = _apply_operator(moments, w.values, w.a, w.lam)
    return w.model_copy(update={"values": new_values, "omega0": float(new_values[0]),
                                "conormal0": None, "iterations": w.iterations + 1})


def fixed_point_profile(pp: ProblemParams, n: int, a: float, lam: float, tol: float) -> Profile:
    moments = cell_moments(pp.d, n)
    values = np.full(len(moments.grid), a, dtype=float)
    previous_update = None
    for iteration in range(1, MAX_PICARD_ITERATIONS + 1):
        new_values = _apply_operator(moments, values, a, lam)
        update = float(np.max(np.abs(new_values - values)))
        values = new_values
        if previous_update:
            logger.debug(f"picard N={pp.N} s={pp.s} p={pp.p} it={iteration} update={update:.3e} "
                         f"ratio={update / previous_update:.3e}")
        previous_update = update
        if update < tol:
            return make_profile(pp, n, values, a=a, lam=lam, iterations=iteration)
    raise ConvergenceError(f"Picard iteration did not reach tol={tol} in {MAX_PICARD_ITERATIONS} steps")


def solve_profile_unit(pp: ProblemParams, tol: float = PROFILE_TOL, n: int = PROFILE_GRID,
                       with_estimate: bool = True) -> Profile:
    """
    Неподвижная точка T с нормировкой ω(π/2) = 1 (профиль ω₁).

    Для p = p_serrin (Λ = 0) возвращается постоянный профиль с маркером
    SerrinCritical. discretization_estimate = |ω₁(0) на n − ω₁(0) на n/2|.

    Args:
        pp: параметры задачи
        tol: порог sup-нормы обновления
        n: число ячеек степенной сетки
        with_estimate: считать ли оценку по половинной сетке

    Returns:
        Profile с conormal0
    """
    if regime(pp) == Regime.SERRIN_CRITICAL:
        grid = profile_grid(pp.d, n)
        return make_profile(pp, n, np.ones(len(grid)), a=1.0, lam=0.0, conormal0=0.0,
                            marker=Regime.SERRIN_CRITICAL.value)
    lam = lambda_coefficient(pp.d, pp.p)
    prof = fixed_point_profile(pp, n, 1.0, lam, tol)
    estimate = None
    if with_estimate and n >= 16:
        coarse = fixed_point_profile(pp, n // 2, 1.0, lam, tol)
        estimate = abs(prof.omega0 - coarse.omega0)
    conormal = conormal_at_zero(pp, prof)
    logger.info(f"unit profile N={pp.N} s={pp.s} p={pp.p}: omega1(0)={prof.omega0:.12g} "
                f"conormal={conormal:.12g} iterations={prof.iterations}")
    return prof.model_copy(update={"conormal0": conormal, "discretization_estimate": estimate})


def conormal_limit(moments, rise: np.ndarray, s: float) -> float:
    """
    −lim (sinφ)^{1−2s}ω'(φ) у границы: D_j = −(ω_j − ω_0)/S(φ_j) и подгонка
    D_j = D + Σ c·φ^{ae+2b}, e = 2 − 2s, по узлам геометрического сгущения.
    rise[j − 1] = ω_j − ω_0.
    """
    grid = moments.grid
    s_values = moments.boundary_s
    usable = [j for j in range(1, GEOMETRIC_LEVELS + 2) if s_values[j] > EXTRAPOLATION_MIN_S]
    e = 2.0 - 2.0 * s
    exponents = sorted({round(a * e + 2.0 * b, 12) for a in range(7) for b in range(2)
                        if 0.0 < a * e + 2.0 * b <= 3.0 + 1e-12})
    take = np.array(usable)
    phi = grid[take] / grid[take[-1]]
    slopes = -rise[take - 1] / s_values[take]
    basis = np.column_stack([np.ones_like(phi)] + [phi ** x for x in exponents])
    coef, *_ = np.linalg.lstsq(basis, slopes, rcond=None)
    return float(coef[0])


def _limit_conormal(moments, values: np.ndarray, lam: float, s: float) -> float:
    # приращение ω_j − ω_0 = Λ·∫_0^{φ_j} B·I берётся частичной суммой схемы,
    # без вычитания близких чисел
    return conormal_limit(moments, lam * np.cumsum(cell_increments(moments, values)), s)


def conormal_at_zero(pp: ProblemParams, w: Profile, rtol: float = CONORMAL_RTOL) -> float:
    """
    dω/dφ^s(0) = −Λ∫_0^{π/2} ωW двумя путями: по весовому интегралу и пределом
    −(sinφ)^{1−2s}ω'(φ) при φ → 0. Расхождение выше rtol даёт ConsistencyError.
    """
    if w.lam == 0.0:
        return 0.0
    moments = cell_moments(pp.d, w.n)
    integral_path = float(-w.lam * inner_integrals(moments, w.values)[0])
    limit_path = _limit_conormal(moments, w.values, w.lam, pp.s)
    scale = max(abs(integral_path), 1e-300)
    if abs(limit_path - integral_path) > rtol * scale:
        raise ConsistencyError(
            f"conormal paths disagree: integral={integral_path!r} limit={limit_path!r} "
            f"rel={abs(limit_path - integral_path) / scale:.3e}"
        )
    return integral_path
