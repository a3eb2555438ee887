"""
Модуль exponents.py

Алгебра показателей задачи: p_weak, p_serrin, p_sobolev, два кандидата p*,
коэффициенты Λ и Θ и показатель τ_p = −2s/(p−1).
Граничные значения p считаются в рациональной арифметике (Fraction) от
двоичного значения s и округляются в float один раз.
"""

import math
from fractions import Fraction
from typing import Dict, Union

from params.models import CriticalExponents, ProblemParams
from specfun.models import DimPair


def critical_fractions(d: DimPair) -> Dict[str, Fraction]:
    """Точные p_weak, p_serrin, p_sobolev как дроби."""
    s = Fraction(d.s)
    N = Fraction(d.N)
    return {
        "p_weak": 1 + 2 * s / N,
        "p_serrin": N / (N - 2 * s),
        "p_sobolev": (N + 2 * s) / (N - 2 * s),
    }


def lambda_coefficient(d: DimPair, p: float) -> float:
    """Λ = X(X + 2s − N), X = 2s/(p−1)."""
    x = 2.0 * d.s / (p - 1.0)
    return x * (x + 2.0 * d.s - d.N)


def theta_coefficient(d: DimPair, p: float) -> float:
    """Θ = N − 2s(p+1)/(p−1); обращается в ноль при p = p_sobolev."""
    return d.N - 2.0 * d.s * (p + 1.0) / (p - 1.0)


def q_polynomial(d: DimPair, x: float) -> float:
    return x * x + (2.0 * d.s - d.N) * x + 1.0 - d.N


def p_star_candidates(d: DimPair) -> Dict[str, float]:
    """
    p_star_Q = 1 + 2s/X*, X* положительный корень Q(X) = X² + (2s−N)X + 1 − N
    (inf, если положительного корня нет, как при N = 1, s ≥ 1/2);
    p_star_printed вычисляется по печатной формуле дословно.
    """
    N, s = d.N, d.s
    x_star = ((N - 2.0 * s) + math.sqrt((N - 2.0 * s) ** 2 + 4.0 * (N - 1.0))) / 2.0
    p_star_q = 1.0 + 2.0 * s / x_star if x_star > 0.0 else math.inf
    root = math.sqrt(N * N + 4.0 * (N - s) + 4.0 * s * s - 4.0)
    p_star_printed = (N + 2.0 * s + root) / (N - 2.0 * s + root)
    return {"p_star_Q": p_star_q, "p_star_printed": p_star_printed}


def critical_exponents(pp: Union[ProblemParams, DimPair]) -> CriticalExponents:
    """
    Таблица критических показателей. Для ProblemParams дополнительно Λ, Θ, τ_p.

    Args:
        pp: параметры задачи или только пара (N, s)

    Returns:
        CriticalExponents
    """
    d = pp.d if isinstance(pp, ProblemParams) else pp
    table = {name: float(value) for name, value in critical_fractions(d).items()}
    table.update(p_star_candidates(d))
    if isinstance(pp, ProblemParams):
        table["lambda"] = lambda_coefficient(d, pp.p)
        table["theta"] = theta_coefficient(d, pp.p)
        table["tau_p"] = pp.tau_p
    return CriticalExponents(**table)
