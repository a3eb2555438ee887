import logging
from typing import Callable, Dict, List

import numpy as np

from params.models import ProblemParams
from qc.checks import (
    check_conormal,
    check_cs_identity,
    check_dirac,
    check_eigenpair,
    check_energy,
    check_harmonic,
    check_log_serrin,
    check_power_identity,
)
from qc.models import CheckResult, SuiteReport
from qc.qc_catalog import Inconsistency, describe
from specfun.models import DimPair

logger = logging.getLogger(__name__)

POWER_RADII = (0.5, 1.0, 2.0)


def tau_grid(d: DimPair, points: int = 7) -> List[float]:
    """Равномерные внутренние точки интервала (−N, 2s)."""
    return [-d.N + (d.N + 2.0 * d.s) * k / (points + 1) for k in range(1, points + 1)]


def power_tau_grid(d: DimPair, points: int = 5) -> List[float]:
    """τ от −N+0.2 до 2s−0.2."""
    return [float(t) for t in np.linspace(-d.N + 0.2, 2.0 * d.s - 0.2, points)]


def _dim(params: dict) -> DimPair:
    return DimPair(N=params.get("N", 3), s=params.get("s", 0.5))


def _problem(params: dict, p: float, eps: int) -> ProblemParams:
    return ProblemParams(d=_dim(params), p=params.get("p") or p, eps=params.get("eps") or eps)


def _taus(params: dict, default: List[float]) -> List[float]:
    tau = params.get("tau")
    return default if tau is None else [float(tau)]


def _cs_identity(params: dict) -> List[dict]:
    d = _dim(params)
    return [check_cs_identity(d, tau) for tau in _taus(params, tau_grid(d))]


def _power_identity(params: dict) -> List[dict]:
    d = _dim(params)
    return [check_power_identity(d, tau, r) for tau in _taus(params, power_tau_grid(d)) for r in POWER_RADII]


def _conormal(params: dict) -> List[dict]:
    d = _dim(params)
    x = params.get("x", 1.0)
    return [check_conormal(d, tau, x) for tau in _taus(params, [d.midpoint])]


def _harmonic(params: dict) -> List[dict]:
    pp = _problem(params, 4.0, -1)
    return [check_harmonic(pp, params.get("x", 1.0), params.get("z", 1.0))]


def _log_serrin(params: dict) -> List[dict]:
    d = _dim(params)
    m = params.get("m")
    masses = [-1.0, -(d.N - 2.0 * d.s) / (2.0 * d.s)] if m is None else [float(m)]
    return [check_log_serrin(d, value) for value in masses]


def _eigenpair(params: dict) -> List[dict]:
    return [check_eigenpair(_dim(params), nphi=params.get("nphi", 128))]


def _energy(params: dict) -> List[dict]:
    pp = _problem(params, 4.0, -1)
    return [check_energy(pp, nt=params.get("nt", 64), nphi=params.get("nphi", 64))]


def _dirac(params: dict) -> List[dict]:
    return [check_dirac(_problem(params, 1.45, 1))]


SUITES: Dict[str, Callable[[dict], List[dict]]] = {
    "cs-identity": _cs_identity,
    "power-identity": _power_identity,
    "conormal": _conormal,
    "harmonic": _harmonic,
    "log-serrin": _log_serrin,
    "eigenpair": _eigenpair,
    "energy": _energy,
    "dirac": _dirac,
}

# печатные формулы, которые затрагивает набор
SUITE_INCONSISTENCIES = {
    "cs-identity": [Inconsistency.C_FRAC_NORMALIZATION],
    "power-identity": [Inconsistency.C_FRAC_NORMALIZATION],
    "conormal": [Inconsistency.EXTENSION_CONSTANT],
    "harmonic": [Inconsistency.POISSON_CONSTANT],
    "energy": [Inconsistency.ENERGY_BOUNDARY_SIGN, Inconsistency.MONOTONICITY_WORDING],
}


def run_suite(name: str, **params) -> dict:
    """
    Запускает один набор проверок.

    Args:
        name: имя набора из SUITES
        **params: N, s, p, eps, tau, m, x, z, nt, nphi (None означает значение по умолчанию)

    Returns:
        {'suite', 'passed', 'params', 'qc_results', 'inconsistencies'}
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    params = {key: value for key, value in params.items() if value is not None}
    results = [CheckResult(**item) for item in SUITES[name](params)]
    passed = all(item.passed for item in results)
    logger.info(f"QC suite {name}: {sum(item.passed for item in results)}/{len(results)} passed")
    report = SuiteReport(
        suite=name, passed=passed, params=params, qc_results=results,
        inconsistencies=describe(SUITE_INCONSISTENCIES.get(name, [])),
    )
    return report.model_dump()
