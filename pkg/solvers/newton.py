"""
Модуль newton.py

Демпфированный метод Ньютона для нелинейных систем сеточных решателей
(цилиндр, задача Дирака). Якобиан может быть плотным или scipy.sparse.
"""

import logging
import warnings
from typing import Callable, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import MatrixRankWarning, spsolve

from config.config import NEWTON_TOL
from core.errors import ConsistencyError, ConvergenceError

logger = logging.getLogger(__name__)

MAX_HALVINGS = 30
ARMIJO = 1e-4


def _solve_linear(jac, rhs: np.ndarray) -> np.ndarray:
    if sparse.issparse(jac):
        with warnings.catch_warnings():
            warnings.simplefilter("error", MatrixRankWarning)
            try:
                step = spsolve(sparse.csc_matrix(jac), rhs)
            except MatrixRankWarning as exc:
                raise ConsistencyError(f"singular sparse Jacobian: {exc}") from exc
    else:
        try:
            step = np.linalg.solve(np.asarray(jac, dtype=float), rhs)
        except np.linalg.LinAlgError as exc:
            raise ConsistencyError(f"singular Jacobian: {exc}") from exc
    step = np.asarray(step, dtype=float)
    if not np.all(np.isfinite(step)):
        raise ConsistencyError("Newton step is not finite")
    return step


def damped_newton(
    residual: Callable[[np.ndarray], np.ndarray],
    jacobian: Callable[[np.ndarray], object],
    x0: np.ndarray,
    tol: float = NEWTON_TOL,
    max_iter: int = 50,
) -> Tuple[np.ndarray, int, float]:
    """
    Решает residual(x) = 0 методом Ньютона с дроблением шага пополам.

    Шаг λ принимается при ‖F(x + λd)‖₂ ≤ (1 − 10⁻⁴λ)‖F(x)‖₂ (условие Армихо),
    остановка по max|F|.

    Args:
        residual: F(x), вектор той же длины, что x
        jacobian: DF(x), плотная матрица или scipy.sparse
        x0: начальное приближение
        tol: порог max|F|
        max_iter: бюджет ньютоновских шагов

    Returns:
        (x, число итераций, max|F(x)|)
    """
    x = np.array(x0, dtype=float)
    f = residual(x)
    norm = float(np.max(np.abs(f))) if f.size else 0.0
    logger.debug(f"newton it=0 residual={norm:.3e}")
    for iteration in range(1, max_iter + 1):
        if norm <= tol:
            return x, iteration - 1, norm
        step = _solve_linear(jacobian(x), -f)
        merit = float(np.linalg.norm(f))
        lam = 1.0
        for _ in range(MAX_HALVINGS):
            trial = x + lam * step
            f_trial = residual(trial)
            trial_merit = float(np.linalg.norm(f_trial))
            if np.isfinite(trial_merit) and trial_merit <= (1.0 - ARMIJO * lam) * merit:
                break
            lam *= 0.5
        else:
            raise ConvergenceError(f"line search failed at Newton step {iteration}, residual={norm:.3e}")
        x, f, norm = trial, f_trial, float(np.max(np.abs(f_trial)))
        logger.debug(f"newton it={iteration} damping={lam:g} residual={norm:.3e}")
    if norm <= tol:
        return x, max_iter, norm
    raise ConvergenceError(f"Newton did not reach tol={tol} in {max_iter} steps, residual={norm:.3e}")
