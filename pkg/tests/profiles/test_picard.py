import math

import numpy as np
import pytest
from scipy import integrate

from params.exponents import lambda_coefficient
from params.models import ProblemParams, Regime
from profiles.grid import cell_moments, profile_grid
from profiles.picard import (
    conormal_at_zero,
    fixed_point_profile,
    inner_integrals,
    make_profile,
    picard_T,
    solve_profile_unit,
)
from specfun.models import DimPair

GRID = 32


def make_pp(N=3, s=0.5, p=4.0, eps=-1):
    return ProblemParams(d=DimPair(N=N, s=s), p=p, eps=eps)


def test_zero_lambda_fixes_constants():
    pp = make_pp()
    grid = profile_grid(pp.d, GRID)
    w = make_profile(pp, GRID, np.full(len(grid), 2.5), a=2.5, lam=0.0)
    assert np.allclose(picard_T(pp, w).values, 2.5, rtol=0.0, atol=1e-15)


def test_zero_profile_is_fixed():
    pp = make_pp()
    grid = profile_grid(pp.d, GRID)
    w = make_profile(pp, GRID, np.zeros(len(grid)), a=0.0)
    assert np.all(picard_T(pp, w).values == 0.0)


def _nested_step_from_one(phi, lam):
    # N = 3, s = 1/2: W = cos²θ, B = 1/cos²σ
    def mu(sigma):
        value, _ = integrate.quad(lambda t: math.cos(t) ** 2, sigma, 0.5 * math.pi, epsabs=0.0, epsrel=1e-13)
        return value

    outer, _ = integrate.quad(lambda sigma: mu(sigma) / math.cos(sigma) ** 2, phi, 0.5 * math.pi,
                              epsabs=1e-14, epsrel=1e-12, limit=200)
    return 1.0 - lam * outer


def test_one_step_from_constant_matches_nested_quadrature():
    pp = make_pp(3, 0.5, 4.0, -1)
    grid = profile_grid(pp.d, GRID)
    w = make_profile(pp, GRID, np.ones(len(grid)), a=1.0)
    stepped = picard_T(pp, w)
    for j in (0, 5, 13, 20, len(grid) - 5, len(grid) - 1):
        expected = _nested_step_from_one(grid[j], w.lam)
        assert stepped.values[j] == pytest.approx(expected, abs=1e-8)
    assert stepped.iterations == 1


def test_picard_linearity():
    pp = make_pp(2, 0.25, 2.0, -1)
    grid = profile_grid(pp.d, GRID)
    rng = np.random.default_rng(7)
    u = make_profile(pp, GRID, rng.normal(size=len(grid)), a=0.0)
    tu = picard_T(pp, u).values
    t3u = picard_T(pp, u.model_copy(update={"values": 3.0 * u.values})).values
    assert np.max(np.abs(t3u - 3.0 * tu)) <= 1e-13 * max(1.0, np.max(np.abs(tu)))


def test_factorial_contraction():
    pp = make_pp(3, 0.5, 4.0, -1)
    grid = profile_grid(pp.d, GRID)
    w = make_profile(pp, GRID, np.ones(len(grid)), a=1.0)
    updates = []
    for _ in range(12):
        nxt = picard_T(pp, w)
        updates.append(float(np.max(np.abs(nxt.values - w.values))))
        w = nxt
    ratios = [b / a for a, b in zip(updates[:-1], updates[1:]) if a > 1e-14]
    # отношения последовательных поправок убывают к нулю
    assert ratios[-1] < 0.2
    assert ratios[-1] < ratios[1]


@pytest.mark.parametrize("N,s,p,eps", [(3, 0.5, 4.0, -1), (2, 0.25, 2.0, -1)])
def test_negative_lambda_profile_decreases_toward_axis(N, s, p, eps):
    pp = make_pp(N, s, p, eps)
    assert lambda_coefficient(pp.d, p) < 0
    prof = solve_profile_unit(pp, n=GRID, with_estimate=False)
    assert np.all(np.diff(prof.values) < 0)
    assert prof.values[-1] == 1.0
    assert prof.conormal0 > 0


@pytest.mark.parametrize("N,s,p,eps", [(3, 0.5, 1.45, 1), (2, 0.25, 1.3, 1)])
def test_positive_lambda_profile_increases_toward_axis(N, s, p, eps):
    pp = make_pp(N, s, p, eps)
    assert lambda_coefficient(pp.d, p) > 0
    prof = solve_profile_unit(pp, n=GRID, with_estimate=False)
    assert np.all(np.diff(prof.values) > 0)
    assert prof.conormal0 < 0


def test_profile_linearity_in_normalization():
    pp = make_pp(3, 0.5, 4.0, -1)
    lam = lambda_coefficient(pp.d, pp.p)
    unit = fixed_point_profile(pp, GRID, 1.0, lam, 1e-13)
    direct = fixed_point_profile(pp, GRID, 2.0, lam, 1e-13)
    assert np.max(np.abs(direct.values - 2.0 * unit.values)) <= 1e-10
    assert unit.scaled(2.0).omega0 == pytest.approx(direct.omega0, abs=1e-10)


def test_serrin_critical_returns_constant_profile():
    pp = make_pp(3, 0.5, 1.5, -1)
    prof = solve_profile_unit(pp, n=GRID)
    assert prof.marker == Regime.SERRIN_CRITICAL.value
    assert np.all(prof.values == 1.0)
    assert conormal_at_zero(pp, prof) == 0.0


@pytest.mark.parametrize("N,s", [(3, 0.5), (2, 0.25)])
def test_first_eigenfunction_and_its_conormal(N, s):
    # ψ₁ = (sinφ)^{2s} решает задачу с Λ = 2sN и нормировкой ψ₁(π/2) = 1
    pp = make_pp(N, s, 4.0, -1)
    n = 64
    lam = 2.0 * s * N
    prof = fixed_point_profile(pp, n, 1.0, lam, 1e-12)
    grid = profile_grid(pp.d, n)
    assert np.max(np.abs(prof.values - np.sin(grid) ** (2.0 * s))) < 1e-3
    integral_path = -lam * inner_integrals(cell_moments(pp.d, n), prof.values)[0]
    assert integral_path == pytest.approx(-2.0 * s, rel=1e-3)
    assert conormal_at_zero(pp, prof, rtol=1e-3) == pytest.approx(integral_path)


def test_unit_profile_reports_iterations_and_estimate():
    pp = make_pp(3, 0.5, 4.0, -1)
    prof = solve_profile_unit(pp, n=GRID)
    assert 1 <= prof.iterations <= 200
    assert prof.discretization_estimate is not None
    assert prof.omega0 == prof.values[0]
