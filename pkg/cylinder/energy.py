"""
Модуль energy.py

Энергия траектории на цилиндре
    I(t) = |S^{N−1}|·[½∫(w_φ² − Λw² − w_t²)dμ_s + εκ_s/(p+1)·|w(t,0)|^{p+1}]
и тождество затухания dI/dt = Θ|S^{N−1}|∫w_t²dμ_s.

Градиентный член берётся сопротивлениями ячеек R_j = ∫dφ/W, объёмные интегралы
массами узлов кусочно-линейной интерполяции; тождество выполняется с ошибкой
O(Δt²) по t и ошибкой угловой схемы по φ.
"""

import logging

import numpy as np

from cylinder.models import CylinderSolution
from params.exponents import lambda_coefficient, theta_coefficient
from params.models import ProblemParams
from quadrature.rules import nodal_rule
from specfun.gamma import extension_constant, sphere_measure

logger = logging.getLogger(__name__)


def time_derivative(sol: CylinderSolution) -> np.ndarray:
    """w_t: центральные разности внутри, трёхточечные односторонние на концах."""
    w = sol.w
    dt = float(sol.t_grid[1] - sol.t_grid[0])
    w_t = np.empty_like(w)
    w_t[1:-1] = (w[2:] - w[:-2]) / (2.0 * dt)
    if len(w) >= 3:
        w_t[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * dt)
        w_t[-1] = (3.0 * w[-1] - 4.0 * w[-2] + w[-3]) / (2.0 * dt)
    else:
        w_t[0] = w_t[-1] = (w[-1] - w[0]) / dt
    return w_t


def _slice_energy(pp: ProblemParams, sol: CylinderSolution, values: np.ndarray, w_t: np.ndarray) -> float:
    rule = nodal_rule(pp.d, sol.phi_grid, sol.volume)
    lam = lambda_coefficient(pp.d, pp.p)
    gradient = float(np.sum(np.diff(values) ** 2 / sol.resistance))
    bulk = 0.5 * (gradient - lam * rule.apply(values ** 2) - rule.apply(w_t ** 2))
    boundary = pp.eps * extension_constant(pp.d) / (pp.p + 1.0) * abs(values[0]) ** (pp.p + 1.0)
    return sphere_measure(pp.N) * (bulk + boundary)


def energy(pp: ProblemParams, sol: CylinderSolution, t_index: int) -> float:
    """I(t) в узле t_index."""
    w_t = time_derivative(sol)
    return _slice_energy(pp, sol, sol.w[t_index], w_t[t_index])


def energy_trace(pp: ProblemParams, sol: CylinderSolution) -> np.ndarray:
    w_t = time_derivative(sol)
    return np.array([_slice_energy(pp, sol, sol.w[i], w_t[i]) for i in range(len(sol.t_grid))])


def dissipation(pp: ProblemParams, sol: CylinderSolution) -> np.ndarray:
    """Θ|S^{N−1}|∫w_t²dμ_s по всем t-узлам."""
    rule = nodal_rule(pp.d, sol.phi_grid, sol.volume)
    theta = theta_coefficient(pp.d, pp.p)
    w_t = time_derivative(sol)
    return np.array([theta * sphere_measure(pp.N) * rule.apply(row ** 2) for row in w_t])


def energy_identity_residual(pp: ProblemParams, sol: CylinderSolution) -> float:
    """
    max по внутренним t-узлам |(I_{i+1} − I_{i−1})/(2Δt) − Θ|S|∫w_t²dμ_s|,
    делённый на max(max|I|, max Θ|S|∫w_t²). Ноль, если обе части нулевые.
    """
    trace = sol.energy_trace if sol.energy_trace is not None else energy_trace(pp, sol)
    rate = dissipation(pp, sol)
    dt = float(sol.t_grid[1] - sol.t_grid[0])
    derivative = (trace[2:] - trace[:-2]) / (2.0 * dt)
    defect = float(np.max(np.abs(derivative - rate[1:-1]))) if len(trace) > 2 else 0.0
    scale = max(float(np.max(np.abs(trace))), float(np.max(np.abs(rate))))
    if scale == 0.0:
        return 0.0
    residual = defect / scale
    logger.info(f"energy identity N={pp.N} s={pp.s} p={pp.p}: defect={defect:.3e} scale={scale:.3e} "
                f"residual={residual:.3e}")
    return residual
