"""
Модуль angular.py

Сферические средние ∫_{S^{N−1}} (|r e₁ − ρσ|² + z²)^{−q} dσ, которые сводят
радиальные интегралы в ℝ^N (и в полупространстве ℝ^N × (0,∞)) к одномерным.
N = 1 и N = 3 считаются в замкнутой форме, N = 2 адаптивной квадратурой по углу.
"""

import math

from scipy import integrate

from core.errors import SingularityError, UnsupportedDimensionError
from specfun.models import DimPair

SUPPORTED_DIMENSIONS = (1, 2, 3)


def _circle_mean(r: float, rho: float, q: float, z: float) -> float:
    d0 = (r - rho) ** 2 + z * z
    b = 2.0 * r * rho

    def integrand(theta):
        # A − B cosθ без вычитания близких чисел
        return (d0 + 2.0 * b * math.sin(0.5 * theta) ** 2) ** (-q)

    # пик ширины ~|r−ρ| у θ = 0
    width = math.sqrt(d0 / b) if b > 0 else math.pi
    points = [p for p in (width, 4.0 * width, 16.0 * width) if p < math.pi]
    value, _ = integrate.quad(integrand, 0.0, math.pi, points=points or None, limit=400,
                              epsabs=0.0, epsrel=1e-12)
    return 2.0 * value


def sphere_mean(N: int, r: float, rho: float, q: float, z: float = 0.0) -> float:
    """
    Интеграл по единичной сфере S^{N−1} (полная мера, не среднее) функции
    σ ↦ (|r e₁ − ρσ|² + z²)^{−q}.

    Args:
        N: размерность (1, 2 или 3)
        r: |x| ≥ 0
        rho: радиус сферы интегрирования ≥ 0
        q: показатель степени (любого знака)
        z: высота в полупространстве

    Returns:
        Значение интеграла
    """
    if N not in SUPPORTED_DIMENSIONS:
        raise UnsupportedDimensionError(f"sphere averages are implemented for N<=3, got N={N}")
    if z == 0.0 and r == rho and q > 0:
        raise SingularityError(f"kernel evaluated on its diagonal r=rho={r}")
    if N == 1:
        return ((r - rho) ** 2 + z * z) ** (-q) + ((r + rho) ** 2 + z * z) ** (-q)
    if N == 2:
        return _circle_mean(r, rho, q, z)
    a = r * r + rho * rho + z * z
    b = 2.0 * r * rho
    if b <= 1e-6 * a:
        return 4.0 * math.pi * a ** (-q) * (1.0 + q * (q + 1.0) * b * b / (6.0 * a * a))
    plus = (r + rho) ** 2 + z * z
    minus = (r - rho) ** 2 + z * z
    if abs(q - 1.0) < 1e-14:
        return 2.0 * math.pi * (math.log(plus) - math.log(minus)) / b
    return 2.0 * math.pi * (plus ** (1.0 - q) - minus ** (1.0 - q)) / (b * (1.0 - q))


def angular_kernel(d: DimPair, r: float, rho: float) -> float:
    """
    Ядро радиальной редукции дробного лапласиана:
    K(r, ρ) = ∫_{S^{N−1}} |r e₁ − ρσ|^{−(N+2s)} dσ.
    Отказывает при r = ρ: главное значение обрабатывает вызывающий код.
    """
    if r == rho:
        raise SingularityError(f"angular_kernel refuses r=rho={r}")
    return sphere_mean(d.N, r, rho, (d.N + 2.0 * d.s) / 2.0)
