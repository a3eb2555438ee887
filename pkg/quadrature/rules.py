"""
Модуль rules.py

Квадратуры для меры dμ_s = (sinφ)^{1−2s}(cosφ)^{N−1}dφ на (0, π/2):
составное правило Гаусса с весовой первой панелью (Гаусс–Якоби) и узловое
правило для сеточных решателей.
"""

from functools import lru_cache
from typing import Any, Callable, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import special

from specfun.models import DimPair


class WeightedRule(BaseModel):
    """Узлы и положительные веса квадратуры по мере dμ_s."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    nodes: np.ndarray
    weights: np.ndarray
    d: DimPair
    order: Dict[str, Any] = Field(default_factory=dict)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """∫ f dμ_s; f векторизована по узлам."""
        return float(np.dot(self.weights, f(self.nodes)))

    def apply(self, values: np.ndarray) -> float:
        """∫ f dμ_s по значениям f в узлах."""
        return float(np.dot(self.weights, values))

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())


def measure_density(d: DimPair, phi: np.ndarray) -> np.ndarray:
    """(sinφ)^{1−2s}(cosφ)^{N−1}."""
    return np.sin(phi) ** (1.0 - 2.0 * d.s) * np.cos(phi) ** (d.N - 1)


def hemisphere_mass(d: DimPair) -> float:
    """∫_0^{π/2} dμ_s = ½B(1−s, N/2)."""
    return 0.5 * float(special.beta(1.0 - d.s, d.N / 2.0))


@lru_cache(maxsize=64)
def _hemisphere_arrays(N: int, s: float, n: int, degree: int):
    h = 0.5 * np.pi / n
    # первая панель: вес φ^{1−2s} берёт на себя Гаусс–Якоби
    x, w = special.roots_jacobi(degree, 0.0, 1.0 - 2.0 * s)
    phi0 = 0.5 * h * (1.0 + x)
    w0 = w * (0.5 * h) ** (2.0 - 2.0 * s) * (np.sin(phi0) / phi0) ** (1.0 - 2.0 * s) * np.cos(phi0) ** (N - 1)
    xl, wl = np.polynomial.legendre.leggauss(degree)
    left = h * np.arange(1, n)
    phi = (left[:, None] + 0.5 * h * (1.0 + xl[None, :])).ravel()
    wg = np.tile(0.5 * h * wl, n - 1)
    wg = wg * np.sin(phi) ** (1.0 - 2.0 * s) * np.cos(phi) ** (N - 1)
    nodes = np.concatenate([phi0, phi])
    weights = np.concatenate([w0, wg])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def hemisphere_rule(d: DimPair, n: int, degree: int = 8) -> WeightedRule:
    """
    Составное правило на n равных панелях (n ≥ 8) по degree узлов в каждой.
    Точно на φ^{1−2s}·(многочлен) в первой панели и на многочленах степени
    2·degree−1, умноженных на гладкую плотность, в остальных.
    """
    if n < 8:
        raise ValueError(f"hemisphere_rule needs n >= 8 panels, got {n}")
    nodes, weights = _hemisphere_arrays(d.N, d.s, n, degree)
    return WeightedRule(nodes=nodes, weights=weights, d=d,
                        order={"panels": n, "degree": degree, "kind": "composite-gauss"})


def nodal_rule(d: DimPair, grid: np.ndarray, masses: np.ndarray) -> WeightedRule:
    """Правило с узлами сеточного решателя (включая концы 0 и π/2) и его массами ячеек."""
    grid = np.asarray(grid, dtype=float)
    masses = np.asarray(masses, dtype=float)
    if grid.shape != masses.shape:
        raise ValueError("grid and masses must have the same shape")
    return WeightedRule(nodes=grid, weights=masses, d=d,
                        order={"panels": len(grid), "degree": 1, "kind": "nodal"})
