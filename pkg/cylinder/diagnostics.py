import logging
from typing import Optional

import numpy as np

from cylinder.models import CylinderSolution, LimitReport
from cylinder.system import steady_state, system_for
from params.models import ProblemParams

logger = logging.getLogger(__name__)

CANDIDATES = ("0", "omega", "-omega")
# доля t-узлов у начала цилиндра, на которой проверяется монотонность
START_FRACTION = 0.25
MONOTONE_SLACK = 1e-10


def limit_diagnostics(pp: ProblemParams, sol: CylinderSolution, omega_root: Optional[np.ndarray] = None) -> LimitReport:
    """
    sup-расстояния срезов w(t, ·) до {0, ω_root, −ω_root}.

    Args:
        pp: параметры задачи
        sol: решение на цилиндре
        omega_root: профиль на phi_grid; по умолчанию дискретное стационарное
            решение на той же сетке

    Returns:
        LimitReport: ближайший кандидат на конце T₀ и на среднем срезе,
        монотонность расстояния до ближайшего кандидата в начале цилиндра
    """
    if omega_root is None:
        omega_root = steady_state(system_for(sol))
    omega = np.asarray(omega_root, dtype=float)
    targets = [np.zeros_like(omega), omega, -omega]
    distances = [[float(np.max(np.abs(row - target))) for target in targets] for row in sol.w]

    start = int(np.argmin(distances[0]))
    middle = len(sol.t_grid) // 2
    interior = int(np.argmin(distances[middle]))
    n_start = max(3, int(START_FRACTION * len(sol.t_grid)))
    track = np.array([row[start] for row in distances[:n_start]])
    steps = np.diff(track)
    monotone = bool(np.all(steps <= MONOTONE_SLACK) or np.all(steps >= -MONOTONE_SLACK))

    report = LimitReport(
        candidates=list(CANDIDATES), distances=distances,
        nearest_at_start=CANDIDATES[start], start_distance=distances[0][start],
        nearest_interior=CANDIDATES[interior], interior_distance=distances[middle][interior],
        monotone_near_start=monotone, omega_norm=float(np.max(np.abs(omega))),
    )
    logger.info(f"limit diagnostics N={pp.N} s={pp.s} p={pp.p}: start -> {report.nearest_at_start} "
                f"({report.start_distance:.3e}), interior -> {report.nearest_interior} "
                f"({report.interior_distance:.3e}), monotone={monotone}")
    return report
