"""
Модуль grid.py

Угловая дискретизация задачи на цилиндре. Узлы и моменты ячеек те же, что у
автомодельных профилей (profiles.grid), а оператор A_s[w] = (W w_φ)_φ / W
записан в интегральной форме схемы Пикара: для f = −A_s[w]
    w_{j+1} − w_j = ∫_{φ_j}^{φ_{j+1}} B(σ) ∫_σ^{π/2} fW dθ dσ,
    ∫_0^{π/2} fW = −dw/dφ^s(0),
с продукт-интегрированием кусочно-линейных f и I/μ. Поэтому профиль пристрелки
на той же сетке является точным стационарным решением схемы.

Сопротивления R_j = ∫ dφ/W и массы узлов нужны только для энергии.
"""

import logging
import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from profiles.grid import GEOMETRIC_LEVELS, cell_moments, profile_grid
from profiles.picard import cell_increments, inner_integrals
from quadrature.adaptive import adaptive_integrate
from specfun.models import DimPair

logger = logging.getLogger(__name__)

MIN_NPHI = 4


class AngularOperator(NamedTuple):
    grid: np.ndarray
    transfer: np.ndarray    # строки: ∫_0^{π/2} fW и приращения по ячейкам
    resistance: np.ndarray  # R_j для граней j+1/2
    volume: np.ndarray      # ∫ W·(шапочка узла j)


def angular_grid(d: DimPair, nphi: int) -> np.ndarray:
    """Сетка профилей: nphi степенных ячеек и геометрическое сгущение в первой."""
    if nphi < MIN_NPHI:
        raise ValueError(f"angular grid needs nphi >= {MIN_NPHI}, got {nphi}")
    return profile_grid(d, nphi)


def grid_cells(grid: np.ndarray) -> int:
    """nphi по числу узлов сетки."""
    return len(grid) - 1 - GEOMETRIC_LEVELS


def weight(d: DimPair, phi):
    return np.sin(phi) ** (1.0 - 2.0 * d.s) * np.cos(phi) ** (d.N - 1)


def _resistances(d: DimPair, grid: np.ndarray) -> np.ndarray:
    s, N = d.s, d.N
    out = np.empty(len(grid) - 1)

    def inverse_weight(t):
        return math.sin(t) ** (2.0 * s - 1.0) * math.cos(t) ** (1 - N)

    for j in range(len(grid) - 1):
        left, right = grid[j], grid[j + 1]
        if j == len(grid) - 2:
            # ∫1/W расходится у оси, берём поток в середине ячейки
            out[j] = (right - left) / weight(d, 0.5 * (left + right))
        elif j == 0:
            out[j] = adaptive_integrate(inverse_weight, left, right, tol=1e-12,
                                        endpoint_exponents=(2.0 * s - 1.0, 0.0))
        else:
            out[j] = adaptive_integrate(inverse_weight, left, right, tol=1e-12)
    return out


def transfer_matrix(moments) -> np.ndarray:
    """
    Матрица G линейного отображения f ↦ (∫_0^{π/2} fW, c_0(f), …, c_{M−1}(f)),
    где c_k — приращение внешнего интеграла схемы Пикара по ячейке k.
    """
    size = len(moments.grid)
    columns = []
    for unit in np.eye(size):
        columns.append(np.concatenate([[inner_integrals(moments, unit)[0]], cell_increments(moments, unit)]))
    return np.column_stack(columns)


def node_masses(moments) -> np.ndarray:
    """∫ f W = Σ V_j f_j для кусочно-линейной f."""
    volume = np.zeros(len(moments.grid))
    volume[:-1] += moments.alpha
    volume[1:] += moments.beta
    return volume


@lru_cache(maxsize=16)
def angular_operator(d: DimPair, nphi: int) -> AngularOperator:
    """Коэффициенты угловой схемы; кешируются по (d, nphi)."""
    grid = angular_grid(d, nphi)
    moments = cell_moments(d, nphi)
    transfer = transfer_matrix(moments)
    resistance = _resistances(d, grid)
    volume = node_masses(moments)
    logger.debug(f"angular operator N={d.N} s={d.s} nphi={nphi}: {len(grid)} nodes, "
                 f"mass={volume.sum():.15g}")
    for arr in (transfer, resistance, volume):
        arr.setflags(write=False)
    return AngularOperator(grid, transfer, resistance, volume)
