"""
Модуль system.py

Сборка и решение краевой задачи по t на конечном цилиндре:
    w_tt + Θw_t + Λw + A_s[w] = 0,
    ∂w/∂ν^s + εκ_s|w|^{p−1}w = 0 при φ = 0,  w_φ = 0 при φ = π/2,
    w(T₀, ·), w(T₁, ·) заданы.
Задача эллиптическая, поэтому решается целиком демпфированным Ньютоном,
а не маршем по t.

По φ используется интегральная форма схемы профилей (cylinder.grid): в каждом
t-срезе строка 0 равна ∫fW − εκ_s|w₀|^{p−1}w₀, строка j+1 равна
c_j(f) − (w_{j+1} − w_j), где f = w_tt + Θw_t + Λw.
"""

import logging
from typing import Optional

import numpy as np
from scipy import sparse

from config.config import CYLINDER_NPHI, CYLINDER_NT, NEWTON_TOL
from core.errors import RegimeError
from cylinder.grid import angular_operator, grid_cells
from cylinder.models import CylinderSolution, CylinderSystem
from params.exponents import lambda_coefficient, theta_coefficient
from params.models import ProblemParams
from params.regime import CLAUSES
from profiles.grid import cell_moments
from profiles.picard import conormal_limit
from solvers.newton import damped_newton
from specfun.gamma import extension_constant

logger = logging.getLogger(__name__)

MIN_DAMPING = 1e-8


def _build(pp: ProblemParams, t_grid: np.ndarray, nphi: int) -> CylinderSystem:
    operator = angular_operator(pp.d, nphi)
    return CylinderSystem(
        pp=pp, t_grid=t_grid, phi_grid=operator.grid, nphi=nphi, transfer=operator.transfer,
        resistance=operator.resistance, volume=operator.volume, theta=theta_coefficient(pp.d, pp.p),
        lam=lambda_coefficient(pp.d, pp.p), kappa=extension_constant(pp.d),
    )


def assemble_system(pp: ProblemParams, nt: int = CYLINDER_NT, nphi: int = CYLINDER_NPHI,
                    t_start: float = 0.0, t_end: float = 10.0) -> CylinderSystem:
    """
    Args:
        pp: параметры задачи (p не равно соболевскому показателю)
        nt: число интервалов по t
        nphi: число ячеек угловой сетки (плюс геометрическое сгущение)
        t_start, t_end: концы цилиндра T₀ < T₁

    Returns:
        CylinderSystem
    """
    theta = theta_coefficient(pp.d, pp.p)
    if abs(theta) <= MIN_DAMPING:
        raise RegimeError(f"damping coefficient {theta:.3e} vanishes at p={pp.p}", clause=CLAUSES["sobolev"])
    if not t_end > t_start or nt < 2:
        raise ValueError(f"need T1 > T0 and nt >= 2, got [{t_start}, {t_end}], nt={nt}")
    return _build(pp, np.linspace(t_start, t_end, nt + 1), nphi)


def system_for(sol: CylinderSolution) -> CylinderSystem:
    """Система, на которой получено решение."""
    return _build(sol.pp, sol.t_grid, grid_cells(sol.phi_grid))


def boundary_flux(system: CylinderSystem, w0: np.ndarray) -> np.ndarray:
    """−dw/dφ^s(0), задаваемая граничным условием: εκ_s|w₀|^{p−1}w₀."""
    pp = system.pp
    return pp.eps * system.kappa * np.abs(w0) ** (pp.p - 1.0) * w0


def _difference_matrix(size: int) -> np.ndarray:
    # строка 0 пустая, строка j+1: w_{j+1} − w_j
    diff = np.zeros((size, size))
    rows = np.arange(1, size)
    diff[rows, rows] = 1.0
    diff[rows, rows - 1] = -1.0
    return diff


def discrete_conormal(system: CylinderSystem, values: np.ndarray) -> float:
    """dw/dφ^s(0) по узлам геометрического сгущения, как в профилях."""
    values = np.asarray(values, dtype=float)
    moments = cell_moments(system.pp.d, system.nphi)
    return conormal_limit(moments, values[1:] - values[0], system.pp.s)


def angular_defect(system: CylinderSystem, values: np.ndarray, eigenvalue: float) -> np.ndarray:
    """
    Невязка дискретного уравнения A_s[ψ] = −ℓψ в строках схемы: граничная строка
    ∫ℓψW + dψ/dφ^s(0) и строки ячеек c_j(ℓψ) − (ψ_{j+1} − ψ_j).
    """
    values = np.asarray(values, dtype=float)
    rows = system.transfer @ (eigenvalue * values)
    rows[0] += discrete_conormal(system, values)
    rows[1:] -= np.diff(values)
    return rows


def _residual_rows(system: CylinderSystem, w: np.ndarray, lam: float) -> np.ndarray:
    # w: полная сетка (nt+1) × M; строки для внутренних t
    dt = system.dt
    w_tt = (w[2:] - 2.0 * w[1:-1] + w[:-2]) / dt ** 2
    w_t = (w[2:] - w[:-2]) / (2.0 * dt)
    inner = w[1:-1]
    rows = (w_tt + system.theta * w_t + lam * inner) @ system.transfer.T
    rows[:, 0] -= boundary_flux(system, inner[:, 0])
    rows[:, 1:] -= np.diff(inner, axis=1)
    return rows


def interior_residual(system: CylinderSystem, w: np.ndarray, lam: Optional[float] = None) -> np.ndarray:
    """
    Невязка схемы на внутренних t-узлах в строках схемы (строка 0 граничная).
    lam заменяет Λ (для проверки на собственной паре).
    """
    lam = system.lam if lam is None else lam
    return _residual_rows(system, np.asarray(w, dtype=float), lam)


def _jacobian(system: CylinderSystem, w: np.ndarray) -> sparse.csr_matrix:
    pp = system.pp
    n_inner, m = w.shape[0] - 2, system.n_phi
    dt = system.dt
    transfer = system.transfer

    block = (system.lam - 2.0 / dt ** 2) * transfer - _difference_matrix(m)
    jac = sparse.kron(sparse.identity(n_inner, format="csr"), sparse.csr_matrix(block), format="csr")
    if n_inner > 1:
        shift = np.ones(n_inner - 1)
        upper = (1.0 / dt ** 2 + system.theta / (2.0 * dt)) * transfer
        lower = (1.0 / dt ** 2 - system.theta / (2.0 * dt)) * transfer
        jac = jac + sparse.kron(sparse.diags([shift], [1]), sparse.csr_matrix(upper), format="csr")
        jac = jac + sparse.kron(sparse.diags([shift], [-1]), sparse.csr_matrix(lower), format="csr")
    boundary = np.zeros(n_inner * m)
    w0 = w[1:-1, 0]
    boundary[::m] = -pp.eps * system.kappa * pp.p * np.abs(w0) ** (pp.p - 1.0)
    return (jac + sparse.diags(boundary)).tocsr()


def newton_solve(system: CylinderSystem, data_start: np.ndarray, data_end: np.ndarray,
                 guess: Optional[np.ndarray] = None, tol: float = NEWTON_TOL) -> CylinderSolution:
    """
    Решает задачу с данными Дирихле на концах цилиндра.

    Args:
        system: собранная система
        data_start, data_end: профили w(T₀, ·), w(T₁, ·) на phi_grid
        guess: начальное приближение на внутренних t-узлах (по умолчанию
            линейная интерполяция данных по t)
        tol: порог max-невязки строк

    Returns:
        CylinderSolution с заполненной энергией
    """
    from cylinder.energy import energy_trace

    t = system.t_grid
    m = system.n_phi
    start = np.asarray(data_start, dtype=float)
    end = np.asarray(data_end, dtype=float)
    if guess is None:
        frac = ((t[1:-1] - t[0]) / (t[-1] - t[0]))[:, None]
        guess = (1.0 - frac) * start + frac * end
    guess = np.asarray(guess, dtype=float)
    if not np.all(np.isfinite(guess)):
        raise ValueError("initial guess must be finite")

    def full(x: np.ndarray) -> np.ndarray:
        return np.vstack([start, x.reshape(-1, m), end])

    def residual(x):
        return _residual_rows(system, full(x), system.lam).ravel()

    def jacobian(x):
        return _jacobian(system, full(x))

    x, iterations, res = damped_newton(residual, jacobian, guess.ravel(), tol=tol)
    w = full(x)
    logger.info(f"cylinder solve N={system.pp.N} s={system.pp.s} p={system.pp.p}: "
                f"{len(t) - 1}x{m} grid, {iterations} Newton steps, residual={res:.3e}")
    sol = CylinderSolution(pp=system.pp, t_grid=t, phi_grid=system.phi_grid, resistance=system.resistance,
                           volume=system.volume, w=w, newton_residual=res, iterations=iterations)
    return sol.model_copy(update={"energy_trace": energy_trace(system.pp, sol)})


def profile_on_grid(system: CylinderSystem) -> np.ndarray:
    """Профиль пристрелки ω_root в узлах phi_grid (сетки совпадают)."""
    from profiles.shooting import solve_selfsimilar

    _, prof = solve_selfsimilar(system.pp, n=system.nphi)
    if not np.array_equal(prof.grid, system.phi_grid):
        raise ValueError("profile grid differs from the cylinder grid")
    return np.array(prof.values, dtype=float)


def steady_state(system: CylinderSystem, guess: Optional[np.ndarray] = None,
                 tol: float = NEWTON_TOL) -> np.ndarray:
    """
    t-независимое дискретное решение: Λ·c_j(ω) = ω_{j+1} − ω_j и
    Λ∫ωW = εκ_s|ω₀|^{p−1}ω₀. По умолчанию старт с профиля пристрелки на той же
    сетке, который уже решает эти строки с точностью итерации Пикара.
    """
    pp = system.pp
    if guess is None:
        guess = profile_on_grid(system)
    m = system.n_phi
    linear = system.lam * system.transfer - _difference_matrix(m)

    def residual(x):
        rows = linear @ x
        rows[0] -= boundary_flux(system, x[:1])[0]
        return rows

    def jacobian(x):
        jac = linear.copy()
        jac[0, 0] -= pp.eps * system.kappa * pp.p * abs(x[0]) ** (pp.p - 1.0)
        return jac

    x, iterations, res = damped_newton(residual, jacobian, np.asarray(guess, dtype=float), tol=tol)
    logger.info(f"steady state N={pp.N} s={pp.s} p={pp.p}: omega(0)={x[0]:.10g} after {iterations} "
                f"Newton steps, residual={res:.3e}")
    return x
