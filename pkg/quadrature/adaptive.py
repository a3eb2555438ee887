"""
Адаптивная одномерная квадратура поверх QUADPACK (scipy.integrate.quad) с
подсказками о степенных особенностях на концах отрезка.
"""

import logging
import math
from typing import Callable, Optional, Sequence, Tuple

from scipy import integrate

from core.errors import ConvergenceError

logger = logging.getLogger(__name__)


def adaptive_integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    endpoint_exponents: Optional[Tuple[float, float]] = None,
    points: Optional[Sequence[float]] = None,
    limit: int = 200,
) -> float:
    """
    ∫_a^b f с оценкой ошибки ≤ max(tol, tol·|I|).

    Args:
        f: подынтегральная функция
        a, b: пределы (b может быть inf)
        tol: допуск (абсолютный и относительный одновременно)
        endpoint_exponents: (α, β), если f ~ (x−a)^α у a и ~ (b−x)^β у b;
            тогда интегрируется гладкая f/((x−a)^α(b−x)^β) с весом QUADPACK 'alg'
        points: внутренние точки излома/особенности
        limit: бюджет подотрезков

    Returns:
        Значение интеграла
    """
    if a == b:
        return 0.0
    if endpoint_exponents is not None and math.isfinite(b):
        alpha, beta = endpoint_exponents
        # правило Кленшоу–Кертиса в QAWS берёт значения на самих концах
        margin = 1e-14 * (b - a)

        def smooth(x):
            x = min(max(x, a + margin), b - margin)
            return f(x) / ((x - a) ** alpha * (b - x) ** beta)

        result = integrate.quad(smooth, a, b, weight="alg", wvar=(alpha, beta),
                                epsabs=tol, epsrel=tol, limit=limit, full_output=1)
    else:
        inner = list(points) if points is not None and math.isfinite(b) else None
        result = integrate.quad(f, a, b, points=inner, epsabs=tol, epsrel=tol,
                                limit=limit, full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3:
        logger.debug(f"quad on [{a}, {b}]: {result[3]}")
    if not math.isfinite(value) or abserr > 10.0 * max(tol, tol * abs(value)):
        raise ConvergenceError(f"quadrature on [{a}, {b}] did not converge: value={value}, abserr={abserr}")
    return float(value)
