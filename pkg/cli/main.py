"""
CLI fraclab
Usage:
    python -m cli.main constants --N 3 --s 0.5 --p 4 --eps -1
    python -m cli.main profile --N 3 --s 0.5 --p 4 --eps -1 --grid 128
    python -m cli.main verify cs-identity --N 3 --s 0.5
    python -m cli.main cylinder --N 3 --s 0.5 --p 4 --eps -1 --start-scale 1.2 --end-scale 0.8
    python -m cli.main dirac --N 3 --s 0.5 --p 1.45 --vinf
    python -m cli.main sweep --N 3 --s 0.5 --eps -1 --p-values 3.5 4 5

Коды выхода: 0 успех, 1 проверка не пройдена, 2 неверные параметры,
3 режим без решения (печатается утверждение), 4 прочие ошибки расчёта.
"""

import argparse
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import ValidationError

from cli.manifest import ManifestRecorder
from cli.output import dumps_json, write_csv, write_json
from config.config import (
    CYLINDER_NPHI,
    CYLINDER_NT,
    DIRAC_NODES,
    LOG_DIR,
    LOG_JSON,
    LOG_LEVEL,
    OUTPUT_DIR,
    PROFILE_GRID,
    PROFILE_TOL,
    THREADS,
    load_run_config,
)
from config.logging_config import setup_console_run_logging
from core.errors import DomainError, FraclabError, RegimeError
from cylinder.diagnostics import limit_diagnostics
from cylinder.energy import energy_identity_residual
from cylinder.system import assemble_system, newton_solve, steady_state
from dirac.solver import DIRAC_TOL, log_mass_diagnostic, radial_grid, solve_dirac, v_infinity
from params.exponents import critical_exponents, lambda_coefficient
from params.models import ProblemParams, Regime
from params.regime import regime, regime_clause
from params.self_similar import PROFILE_REGIMES, c_p, c_p_printed
from profiles.energy import profile_energy
from profiles.shooting import printed_normalization, solve_selfsimilar
from qc.qc_catalog import Inconsistency, describe
from qc.reporter import SUITES, run_suite
from specfun.cs_tau import mu_zero
from specfun.gamma import c_frac, c_frac_printed, extension_constant
from specfun.models import DimPair

logger = logging.getLogger(__name__)


def _flag(value: str) -> bool:
    return str(value).strip().lower() in ("1", "true", "yes", "on")


def _float_list(value) -> List[float]:
    if isinstance(value, str):
        return [float(item) for item in value.replace(",", " ").split()]
    return [float(item) for item in value]


# Преобразование строк файла --config к типам флагов
OPTION_TYPES: Dict[str, Callable] = {
    "N": int, "s": float, "p": float, "eps": int, "tol": float, "grid": int,
    "nt": int, "nphi": int, "t0": float, "t1": float, "start_scale": float, "end_scale": float,
    "k": float, "vinf": _flag, "tau": float, "m": float, "x": float, "z": float,
    "p_values": _float_list, "out": str, "log_level": str, "json_logs": _flag,
}

COMMON_DEFAULTS = {"out": OUTPUT_DIR, "log_level": LOG_LEVEL, "json_logs": LOG_JSON}

COMMAND_DEFAULTS = {
    "constants": {},
    "profile": {"tol": PROFILE_TOL, "grid": PROFILE_GRID},
    "verify": {},
    "cylinder": {"nt": CYLINDER_NT, "nphi": CYLINDER_NPHI, "t0": 0.0, "t1": 10.0,
                 "start_scale": 1.0, "end_scale": 1.0},
    "dirac": {"eps": 1, "k": 1.0, "grid": DIRAC_NODES, "tol": DIRAC_TOL, "vinf": False},
    "sweep": {"tol": PROFILE_TOL, "grid": PROFILE_GRID},
}


def _add_problem_args(parser: argparse.ArgumentParser, need_p: bool = True) -> None:
    parser.add_argument("--N", type=int, help="Размерность N (1..3)")
    parser.add_argument("--s", type=float, help="Порядок s из (0, 1)")
    parser.add_argument("--p", type=float, help="Показатель нелинейности p > 1" if need_p else "Необязательный p")
    parser.add_argument("--eps", type=int, choices=[-1, 1], help="Знак нелинейности")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraclab", description="Self-similar and Dirac solutions of fractional Emden equations.")
    parser.add_argument("--config", type=str, help="Файл запуска со строками key = value")
    parser.add_argument("--out", type=str, help="Каталог выходных файлов")
    parser.add_argument("--log-level", type=str, help="DEBUG, INFO, WARNING, ERROR")
    parser.add_argument("--json-logs", action="store_true", default=None, help="Логи строками JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    constants = sub.add_parser("constants", help="Критические показатели, Λ, Θ, c_p, режим")
    _add_problem_args(constants, need_p=False)

    profile = sub.add_parser("profile", help="Автомодельный профиль ω на [0, π/2]")
    _add_problem_args(profile)
    profile.add_argument("--tol", type=float, help="Допуск итерации Пикара")
    profile.add_argument("--grid", type=int, help="Число ячеек сетки по φ")

    verify = sub.add_parser("verify", help="Наборы проверок тождеств")
    verify.add_argument("suite", choices=sorted(SUITES))
    _add_problem_args(verify)
    for name in ("tau", "m", "x", "z"):
        verify.add_argument(f"--{name}", type=float)
    verify.add_argument("--nt", type=int)
    verify.add_argument("--nphi", type=int)

    cylinder = sub.add_parser("cylinder", help="Задача Дирихле на цилиндре (t, φ)")
    _add_problem_args(cylinder)
    cylinder.add_argument("--nt", type=int, help="Интервалов по t")
    cylinder.add_argument("--nphi", type=int, help="Интервалов по φ")
    cylinder.add_argument("--t0", type=float)
    cylinder.add_argument("--t1", type=float)
    cylinder.add_argument("--start-scale", type=float, help="Данные при t0: множитель ω_root")
    cylinder.add_argument("--end-scale", type=float, help="Данные при t1: множитель ω_root")

    dirac = sub.add_parser("dirac", help="Задача с мерой Дирака в шаре")
    _add_problem_args(dirac)
    dirac.add_argument("--k", type=float, help="Масса дельта-функции")
    dirac.add_argument("--grid", type=int, help="Число узлов радиальной сетки")
    dirac.add_argument("--tol", type=float, help="Порог ширины вилки Пикара")
    dirac.add_argument("--vinf", action="store_true", default=None, help="Предел k → ∞")

    sweep = sub.add_parser("sweep", help="Профили для списка p параллельно")
    _add_problem_args(sweep, need_p=False)
    sweep.add_argument("--p-values", type=float, nargs="+")
    sweep.add_argument("--tol", type=float)
    sweep.add_argument("--grid", type=int)
    return parser


def resolve_options(args: argparse.Namespace) -> argparse.Namespace:
    """Флаги > файл --config > значения по умолчанию."""
    from_file = load_run_config(args.config)
    by_key = {dest.lower(): dest for dest in vars(args)}
    for key, raw in from_file.items():
        dest = by_key.get(key)
        if dest is None:
            logger.warning(f"config key {key!r} is not an option of {args.command}; ignored")
            continue
        if getattr(args, dest) is None and dest in OPTION_TYPES:
            setattr(args, dest, OPTION_TYPES[dest](raw))
    for dest, value in {**COMMON_DEFAULTS, **COMMAND_DEFAULTS[args.command]}.items():
        if getattr(args, dest, None) is None:
            setattr(args, dest, value)
    return args


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise ValueError(f"{args.command}: missing required option(s) {', '.join(missing)}")


def _dim(args: argparse.Namespace) -> DimPair:
    _require(args, "N", "s")
    return DimPair(N=args.N, s=args.s)


def _problem(args: argparse.Namespace) -> ProblemParams:
    d = _dim(args)
    _require(args, "p", "eps")
    return ProblemParams(d=d, p=args.p, eps=args.eps)


def _params(args: argparse.Namespace) -> dict:
    return {key: value for key, value in vars(args).items() if key not in ("config", "log_level", "json_logs")}


def _emit(report: dict) -> None:
    print(dumps_json(report))


def _exponent_inconsistencies(table: dict) -> List[Inconsistency]:
    found = [Inconsistency.C_FRAC_NORMALIZATION]
    if not math.isclose(table["p_star_Q"], table["p_star_printed"], rel_tol=1e-12):
        found.append(Inconsistency.P_STAR_PRINTED)
    return found


def cmd_constants(args: argparse.Namespace) -> int:
    recorder = ManifestRecorder("constants", _params(args))
    d = _dim(args)
    target = d
    if args.p is not None:
        target = _problem(args)
    table = critical_exponents(target).model_dump(by_alias=True, exclude_none=True)
    report = {"N": d.N, "s": d.s, **table, "mu0": mu_zero(d), "c_frac": c_frac(d),
              "c_frac_printed": c_frac_printed(d), "kappa_s": extension_constant(d)}
    found = _exponent_inconsistencies(table)
    if isinstance(target, ProblemParams):
        label = regime(target)
        value = c_p(target) if label in PROFILE_REGIMES else None
        printed = c_p_printed(target)
        report.update(p=target.p, eps=target.eps, regime=label, clause=regime_clause(target),
                      c_p=value, c_p_printed=printed)
        if value is not None and (printed is None or not math.isclose(value, printed, rel_tol=1e-12)):
            found.append(Inconsistency.C_P_SIGN_BRANCH)
        if label == Regime.UNIQUE_PROFILE_LE and table["lambda"] < 0.0:
            found.append(Inconsistency.MONOTONICITY_WORDING)
    report["inconsistencies"] = describe(found)
    path = write_json(report, args.out, "constants.json")
    recorder.finish(args.out, [path])
    _emit(report)
    return 0


def cmd_profile(args: argparse.Namespace) -> int:
    pp = _problem(args)
    recorder = ManifestRecorder("profile", _params(args))
    a_root, prof = solve_selfsimilar(pp, tol=args.tol, n=args.grid)
    lam = lambda_coefficient(pp.d, pp.p)
    found = [Inconsistency.EXTENSION_CONSTANT]
    printed = c_p_printed(pp)
    if printed is None or not math.isclose(printed, c_p(pp), rel_tol=1e-12):
        found.append(Inconsistency.C_P_SIGN_BRANCH)
    if lam < 0.0:
        found.append(Inconsistency.MONOTONICITY_WORDING)
    report = {
        "N": pp.N, "s": pp.s, "p": pp.p, "eps": pp.eps, "regime": regime(pp), "grid": args.grid,
        "a_root": a_root, "omega0": prof.omega0, "c_p": c_p(pp), "c_p_printed": printed,
        "cross_check_error": prof.cross_check_error, "discretization_estimate": prof.discretization_estimate,
        "iterations": prof.iterations, "lambda": lam, "energy": profile_energy(pp, prof),
        "omega0_printed_normalization": printed_normalization(pp, prof),
        "inconsistencies": describe(found),
    }
    outputs = [
        write_csv(pd.DataFrame({"phi": prof.grid, "omega": prof.values}), args.out, "profile.csv"),
        write_json(report, args.out, "profile.json"),
    ]
    recorder.finish(args.out, outputs, tolerances={"tol": args.tol}, grids={"grid": args.grid})
    _emit(report)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    recorder = ManifestRecorder("verify", _params(args))
    report = run_suite(args.suite, N=args.N, s=args.s, p=args.p, eps=args.eps, tau=args.tau, m=args.m,
                       x=args.x, z=args.z, nt=args.nt, nphi=args.nphi)
    path = write_json(report, args.out, f"verify_{args.suite}.json")
    recorder.finish(args.out, [path])
    _emit(report)
    if not report["passed"]:
        logger.error(f"verify {args.suite}: some cases failed their tolerance")
        return 1
    return 0


def cmd_cylinder(args: argparse.Namespace) -> int:
    pp = _problem(args)
    recorder = ManifestRecorder("cylinder", _params(args))
    system = assemble_system(pp, nt=args.nt, nphi=args.nphi, t_start=args.t0, t_end=args.t1)
    omega = steady_state(system)
    sol = newton_solve(system, args.start_scale * omega, args.end_scale * omega)
    limits = limit_diagnostics(pp, sol, omega)
    found = [Inconsistency.ENERGY_BOUNDARY_SIGN, Inconsistency.EXTENSION_CONSTANT]
    if system.lam < 0.0:
        found.append(Inconsistency.MONOTONICITY_WORDING)
    report = {
        "N": pp.N, "s": pp.s, "p": pp.p, "eps": pp.eps, "nt": args.nt, "nphi": args.nphi,
        "theta": system.theta, "lambda": system.lam, "omega0": float(omega[0]), "c_p": c_p(pp),
        "iterations": sol.iterations, "newton_residual": sol.newton_residual,
        "energy_start": float(sol.energy_trace[0]), "energy_end": float(sol.energy_trace[-1]),
        "energy_identity_residual": energy_identity_residual(pp, sol),
        "limit": limits, "inconsistencies": describe(found),
    }
    t_mesh, phi_mesh = np.meshgrid(sol.t_grid, sol.phi_grid, indexing="ij")
    outputs = [
        write_csv(pd.DataFrame({"t": t_mesh.ravel(), "phi": phi_mesh.ravel(), "w": sol.w.ravel()}),
                  args.out, "w.csv"),
        write_csv(pd.DataFrame({"t": sol.t_grid, "I": sol.energy_trace}), args.out, "energy.csv"),
        write_json(report, args.out, "cylinder.json"),
    ]
    recorder.finish(args.out, outputs, grids={"nt": args.nt, "nphi": args.nphi})
    _emit(report)
    return 0


def cmd_dirac(args: argparse.Namespace) -> int:
    pp = _problem(args)
    recorder = ManifestRecorder("dirac", _params(args))
    grid = radial_grid(args.grid)
    report = {"N": pp.N, "s": pp.s, "p": pp.p, "grid": args.grid}
    if args.vinf:
        sol, limit = v_infinity(pp, grid)
        report["v_infinity"] = limit
        report["c_p"] = c_p(pp) if regime(pp) in PROFILE_REGIMES else None
    else:
        sol = solve_dirac(pp, args.k, grid, tol=args.tol)
    report.update(
        k=sol.k, method=sol.method, iterations=sol.iterations, bounds_ok=sol.bounds_ok,
        monotone=sol.monotone, sandwich_constant=sol.sandwich_constant, bracket_width=sol.bracket_width,
        log_mass=log_mass_diagnostic(sol),
    )
    outputs = [
        write_csv(pd.DataFrame({"r": sol.r_grid, "v": sol.v}), args.out, "v.csv"),
        write_json(report, args.out, "dirac.json"),
    ]
    recorder.finish(args.out, outputs, tolerances={"tol": args.tol}, grids={"grid": args.grid})
    _emit(report)
    return 0


def _profile_row(d: DimPair, eps: int, p: float, tol: float, grid: int) -> dict:
    pp = ProblemParams(d=d, p=p, eps=eps)
    label = regime(pp)
    try:
        _, prof = solve_selfsimilar(pp, tol=tol, n=grid)
    except RegimeError as e:
        logger.info(f"sweep p={p}: {e.clause}")
        return {"p": p, "omega0": math.nan, "c_p": math.nan, "cross_check_error": math.nan, "regime": str(label)}
    return {"p": p, "omega0": prof.omega0, "c_p": c_p(pp), "cross_check_error": prof.cross_check_error,
            "regime": str(label)}


def cmd_sweep(args: argparse.Namespace) -> int:
    d = _dim(args)
    _require(args, "eps", "p_values")
    recorder = ManifestRecorder("sweep", _params(args))
    p_values = sorted(set(args.p_values))
    workers = max(1, min(THREADS, len(p_values)))
    logger.info(f"sweep over {len(p_values)} exponents with {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(executor.map(lambda p: _profile_row(d, args.eps, p, args.tol, args.grid), p_values))
    table = pd.DataFrame(rows, columns=["p", "omega0", "c_p", "cross_check_error", "regime"])
    path = write_csv(table, args.out, "sweep.csv")
    recorder.finish(args.out, [path], tolerances={"tol": args.tol}, grids={"grid": args.grid})
    _emit({"rows": rows})
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "constants": cmd_constants,
    "profile": cmd_profile,
    "verify": cmd_verify,
    "cylinder": cmd_cylinder,
    "dirac": cmd_dirac,
    "sweep": cmd_sweep,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Точка входа CLI; возвращает код выхода."""
    args = build_parser().parse_args(argv)
    try:
        resolve_options(args)
        setup_console_run_logging(LOG_DIR, args.log_level, args.json_logs)
        return COMMANDS[args.command](args)
    except RegimeError as e:
        print(f"error: {e.clause or e}", file=sys.stderr)
        return 3
    except (ValidationError, DomainError, ValueError, FileNotFoundError) as e:
        print(f"error: {str(e).splitlines()[0]}", file=sys.stderr)
        return 2
    except FraclabError as e:
        logger.error(f"{args.command} aborted: {e}")
        return 4


if __name__ == "__main__":
    sys.exit(main())
