"""
QC Checks: по одной функции на случай проверки.

Каждая функция возвращает dict {'check', 'passed', 'residual', 'tolerance',
'details'}; наборы случаев собирает qc.reporter.
"""

import logging
import math

import numpy as np

from cylinder.energy import energy_identity_residual
from cylinder.system import angular_defect, assemble_system, discrete_conormal, newton_solve, steady_state
from dirac.solver import radial_grid, solve_dirac
from extension.conormal import conormal_derivative, harmonic_residual
from extension.poisson import make_extension
from flap.log_serrin import frac_lap_log
from flap.models import power_function, u_p_function
from flap.radial import frac_lap_radial
from params.models import ProblemParams
from specfun.cs_tau import cs_tau_closed, cs_tau_integral
from specfun.models import DimPair

logger = logging.getLogger(__name__)


def _result(check: str, residual: float, tolerance: float, passed=None, **details) -> dict:
    if passed is None:
        passed = bool(math.isfinite(residual) and residual <= tolerance)
    if not passed:
        logger.warning(f"QC check {check} failed: residual={residual:.3e} tolerance={tolerance:.3e}")
    return {"check": check, "passed": passed, "residual": float(residual), "tolerance": float(tolerance),
            "details": details}


def check_cs_identity(d: DimPair, tau: float, tol: float = 1e-6) -> dict:
    """Замкнутая формула C_s(τ) против сингулярного интеграла."""
    closed = cs_tau_closed(d, tau)
    integral = cs_tau_integral(d, tau)
    residual = abs(closed - integral) / max(abs(closed), 1e-3)
    return _result(f"cs_identity(tau={tau:g})", residual, tol, closed=closed, integral=integral)


def check_power_identity(d: DimPair, tau: float, r: float, tol: float = 1e-4) -> dict:
    """(−Δ)^s r^τ = C_s(τ)r^{τ−2s} прямой квадратурой."""
    expected = cs_tau_closed(d, tau) * r ** (tau - 2.0 * d.s)
    value = frac_lap_radial(d, power_function(tau), r, 1e-9)
    scale = max(abs(expected), r ** (tau - 2.0 * d.s))
    residual = abs(value - expected) / scale
    return _result(f"power_identity(tau={tau:g}, r={r:g})", residual, tol, value=value, expected=expected)


def check_conormal(d: DimPair, tau: float, x: float, tol: float = 1e-3) -> dict:
    """Конормальная производная продолжения r^τ против C_s(τ)x^{τ−2s}."""
    expected = cs_tau_closed(d, tau) * x ** (tau - 2.0 * d.s)
    value = conormal_derivative(d, power_function(tau), x, tol=1e-10)
    residual = abs(value - expected) / max(abs(expected), 1e-12)
    return _result(f"conormal(tau={tau:g}, x={x:g})", residual, tol, value=value, expected=expected)


def check_harmonic(pp: ProblemParams, x: float, z: float, h: float = 0.05, min_ratio: float = 3.5) -> dict:
    """
    Невязка вырожденно-гармонического уравнения для продолжения U_p:
    второй порядок по шагу (отношение невязок при h и h/2 не меньше min_ratio).
    """
    u = make_extension(pp.d, u_p_function(pp), tol=1e-12)
    coarse = harmonic_residual(pp.d, u, x, z, h)
    fine = harmonic_residual(pp.d, u, x, z, 0.5 * h)
    ratio = abs(coarse) / abs(fine) if fine != 0.0 else math.inf
    passed = bool(ratio >= min_ratio or abs(coarse) <= 1e-10)
    return _result(f"harmonic(x={x:g}, z={z:g})", abs(fine), abs(coarse), passed=passed,
                   coarse=coarse, fine=fine, ratio=ratio)


def check_log_serrin(d: DimPair, m: float, radii=(1e-2, 1e-3)) -> dict:
    """Отношение (−Δ)^s w_m к главному члену приближается к 1 при r → 0."""
    ratios = []
    for r in radii:
        value, leading = frac_lap_log(d, m, r, tol=1e-8)
        ratios.append(value / leading)
    errors = [abs(x - 1.0) for x in ratios]
    passed = bool(all(b < a for a, b in zip(errors[:-1], errors[1:])))
    return _result(f"log_serrin(m={m:g})", errors[-1], errors[0], passed=passed,
                   radii=list(radii), ratios=ratios)


def check_eigenpair(d: DimPair, nphi: int = 64, tol: float = 1e-3) -> dict:
    """
    Дискретный A_s на (sinφ)^{2s}: собственное значение −2sN (невязка строк
    схемы) и конормаль −2s.
    """
    # угловой оператор не зависит от p; берём показатель выше соболевского
    p_sobolev = (d.N + 2.0 * d.s) / (d.N - 2.0 * d.s)
    system = assemble_system(ProblemParams(d=d, p=p_sobolev + 1.0, eps=-1), nt=2, nphi=nphi)
    psi = np.sin(system.phi_grid) ** (2.0 * d.s)
    node_error = float(np.max(np.abs(angular_defect(system, psi, 2.0 * d.s * d.N))))
    conormal = discrete_conormal(system, psi)
    residual = max(abs(conormal + 2.0 * d.s) / (2.0 * d.s), node_error)
    return _result(f"eigenpair(nphi={nphi})", residual, tol, conormal=conormal, node_error=node_error)


def check_energy(pp: ProblemParams, nt: int = 64, nphi: int = 64, tol: float = 1e-2) -> dict:
    """Стационарные и смешанные данные: невязка Ньютона и тождество энергии."""
    system = assemble_system(pp, nt=nt, nphi=nphi)
    omega = steady_state(system)
    steady = newton_solve(system, omega, omega)
    mixed = newton_solve(system, 1.2 * omega, 0.8 * omega)
    identity = energy_identity_residual(pp, mixed)
    passed = bool(steady.iterations == 0 and steady.newton_residual <= 1e-6 and identity <= tol)
    return _result(f"energy(nt={nt}, nphi={nphi})", identity, tol, passed=passed,
                   steady_iterations=steady.iterations, steady_residual=steady.newton_residual,
                   steady_identity=energy_identity_residual(pp, steady), omega0=float(omega[0]))


def check_dirac(pp: ProblemParams, masses=(1.0, 2.0, 4.0, 8.0), n: int = 120) -> dict:
    """Вилка 0 ≤ v_k ≤ kG, монотонность по r и по k, ограниченность (kG − v_k)/k^p."""
    grid = radial_grid(n)
    solutions = [solve_dirac(pp, k, grid) for k in masses]
    constants = [sol.sandwich_constant for sol in solutions]
    ordered = all(np.all(a.v <= b.v * (1.0 + 1e-9)) for a, b in zip(solutions[:-1], solutions[1:]))
    bounded = bool(np.all(np.diff(constants) <= 1e-6 * constants[0]))
    passed = bool(all(sol.bounds_ok and sol.monotone for sol in solutions) and ordered and bounded)
    return _result("dirac_sandwich", max(constants), constants[0], passed=passed,
                   masses=list(masses), sandwich_constants=constants, monotone_in_k=bool(ordered))
