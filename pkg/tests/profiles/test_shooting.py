import numpy as np
import pytest

from core.errors import RegimeError
from params.models import ProblemParams
from params.self_similar import c_p
from profiles.shooting import printed_normalization, shooting_value, solve_selfsimilar, unit_profile
from specfun.gamma import extension_constant
from specfun.models import DimPair

GRID = 64


def make_pp(N=3, s=0.5, p=4.0, eps=-1):
    return ProblemParams(d=DimPair(N=N, s=s), p=p, eps=eps)


def test_small_amplitude_limit_is_conormal():
    pp = make_pp()
    unit = unit_profile(pp, n=GRID)
    a = 1e-6
    assert shooting_value(pp, a, n=GRID) / a == pytest.approx(unit.conormal0, rel=1e-9)


def test_shooting_ratio_monotone_in_amplitude():
    amplitudes = np.geomspace(1e-2, 1e2, 9)
    le = make_pp(3, 0.5, 4.0, -1)
    ratios = [shooting_value(le, a, n=GRID) / a for a in amplitudes]
    assert np.all(np.diff(ratios) < 0)
    ef = make_pp(3, 0.5, 1.45, 1)
    ratios = [shooting_value(ef, a, n=GRID) / a for a in amplitudes]
    assert np.all(np.diff(ratios) > 0)
    assert ratios[0] < 0


@pytest.mark.parametrize("N,s,p,eps", [
    (3, 0.5, 4.0, -1),
    (3, 0.5, 1.45, 1),
    (2, 0.25, 2.0, -1),
    (2, 0.25, 1.3, 1),
    (2, 0.25, 3.0, -1),
    (1, 0.25, 1.75, 1),
])
def test_boundary_value_matches_closed_form(N, s, p, eps):
    pp = make_pp(N, s, p, eps)
    a_root, prof = solve_selfsimilar(pp)
    assert a_root > 0
    assert np.all(prof.values > 0)
    assert prof.omega0 == pytest.approx(c_p(pp), rel=1e-3)
    assert prof.cross_check_error <= 1e-3
    # на корне граничное условие выполнено
    kappa = extension_constant(pp.d)
    assert prof.conormal0 + eps * kappa * prof.omega0 ** p == pytest.approx(0.0, abs=1e-8 * abs(prof.conormal0))


def test_trivial_regime_refuses_shooting():
    pp = make_pp(3, 0.5, 1.2, 1)
    with pytest.raises(RegimeError) as excinfo:
        solve_selfsimilar(pp, n=GRID)
    assert "E_1^+" in excinfo.value.clause
    with pytest.raises(RegimeError):
        shooting_value(pp, 1.0, n=GRID)


def test_serrin_critical_has_no_root():
    with pytest.raises(RegimeError):
        solve_selfsimilar(make_pp(3, 0.5, 1.5, 1), n=GRID)


def test_grid_refinement_within_estimate():
    pp = make_pp(3, 0.5, 4.0, -1)
    coarse = unit_profile(pp, n=GRID)
    fine = unit_profile(pp, n=2 * GRID)
    assert abs(fine.omega0 - coarse.omega0) <= coarse.discretization_estimate


def test_printed_normalization_scales_by_kappa():
    pp = make_pp()
    _, prof = solve_selfsimilar(pp, n=GRID)
    kappa = extension_constant(pp.d)
    assert printed_normalization(pp, prof) == pytest.approx(kappa ** (1.0 / 3.0) * prof.omega0)
