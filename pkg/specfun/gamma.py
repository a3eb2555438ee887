"""
Модуль gamma.py

Гамма-функция и её обратная (целая) функция, а также константы нормировки,
которые строятся из них: c_{N,s}, мера сферы, константа Рисса и константа
продолжения Каффарелли–Сильвестра.
"""

import math
from typing import Tuple

from scipy import special

from specfun.models import DimPair


def gamma_kernel(x: float) -> Tuple[float, float]:
    """
    Возвращает (Γ(x), 1/Γ(x)). В полюсах Γ = +inf, обратная функция = 0.

    Args:
        x: вещественный аргумент

    Returns:
        Кортеж (gamma, recip_gamma)
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        return math.inf, 0.0
    return float(special.gamma(x)), float(special.rgamma(x))


def sphere_measure(N: int) -> float:
    """|S^{N−1}| = 2π^{N/2}/Γ(N/2); для N = 1 это 2 (две точки ±1)."""
    return 2.0 * math.pi ** (N / 2.0) / math.gamma(N / 2.0)


def c_frac(d: DimPair) -> float:
    """
    Нормировочная константа c_{N,s} сингулярного интеграла дробного лапласиана:
    s·2^{2s}Γ((N+2s)/2)/(π^{N/2}Γ(1−s)). С ней символ оператора равен |ξ|^{2s}.
    """
    N, s = d.N, d.s
    return s * 2.0 ** (2.0 * s) * math.gamma((N + 2.0 * s) / 2.0) / (
        math.pi ** (N / 2.0) * math.gamma(1.0 - s)
    )


def c_frac_printed(d: DimPair) -> float:
    """Печатный вариант 2^{2s}π^{−N/2}Γ((N+2s)/2)/Γ(1−s) без множителя s (только для отчёта)."""
    N, s = d.N, d.s
    return 2.0 ** (2.0 * s) * math.pi ** (-N / 2.0) * math.gamma((N + 2.0 * s) / 2.0) / math.gamma(1.0 - s)


def riesz_constant(d: DimPair) -> float:
    """a(N,s) = Γ((N−2s)/2)/(2^{2s}π^{N/2}Γ(s)): (−Δ)^s [a|x|^{2s−N}] = δ₀."""
    N, s = d.N, d.s
    return math.gamma((N - 2.0 * s) / 2.0) / (2.0 ** (2.0 * s) * math.pi ** (N / 2.0) * math.gamma(s))


def extension_constant(d: DimPair) -> float:
    """
    κ_s = 2^{1−2s}Γ(1−s)/Γ(s): −lim z^{1−2s}u_z = κ_s·(−Δ)^s v для нормированного
    продолжения u следа v. При s = 1/2 равна 1.
    """
    s = d.s
    return 2.0 ** (1.0 - 2.0 * s) * math.gamma(1.0 - s) / math.gamma(s)
