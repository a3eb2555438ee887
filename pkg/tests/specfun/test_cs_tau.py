import math

import numpy as np
import pytest

from core.errors import DomainError, UnsupportedDimensionError
from specfun.cs_tau import cs_derivs_at_zero, cs_tau_closed, cs_tau_integral, mu_zero, tau_pm
from specfun.models import DimPair

# сетка (N, s) с N > 2s
DIM_GRID = [(1, 0.25), (2, 0.25), (2, 0.5), (2, 0.75), (3, 0.25), (3, 0.5), (3, 0.75)]


def make_d(N=3, s=0.5):
    return DimPair(N=N, s=s)


def tau_grid(d, points=7):
    return [-d.N + (d.N + 2.0 * d.s) * k / (points + 1) for k in range(1, points + 1)]


def test_closed_form_zeros_are_exact():
    for N, s in DIM_GRID:
        d = make_d(N, s)
        assert abs(cs_tau_closed(d, 0.0)) <= 1e-14
        assert abs(cs_tau_closed(d, 2.0 * s - N)) <= 1e-14


def test_closed_form_maximum_value():
    d = make_d(3, 0.5)
    assert cs_tau_closed(d, -1.0) == pytest.approx(2.0 / math.pi, rel=1e-13)
    for N, s in DIM_GRID:
        d = make_d(N, s)
        assert cs_tau_closed(d, d.midpoint) == pytest.approx(-mu_zero(d), rel=1e-12)


def test_closed_form_symmetry():
    for N, s in DIM_GRID:
        d = make_d(N, s)
        for tau in tau_grid(d):
            left = cs_tau_closed(d, tau)
            right = cs_tau_closed(d, 2.0 * s - N - tau)
            assert left == pytest.approx(right, rel=1e-10, abs=1e-15), (N, s, tau)


def test_closed_form_concave_midpoints():
    rng = np.random.default_rng(20)
    for N, s in DIM_GRID:
        d = make_d(N, s)
        for _ in range(20):
            a, b = np.sort(rng.uniform(-N + 1e-3, 2.0 * s - 1e-3, size=2))
            mid = cs_tau_closed(d, 0.5 * (a + b))
            assert mid >= 0.5 * (cs_tau_closed(d, a) + cs_tau_closed(d, b)) - 1e-12


def test_closed_form_domain():
    d = make_d(3, 0.5)
    with pytest.raises(DomainError):
        cs_tau_closed(d, 1.0)
    with pytest.raises(DomainError):
        cs_tau_closed(d, -3.0)


def test_integral_trivial_and_reference_values():
    assert cs_tau_integral(make_d(1, 0.25), 0.0) == 0.0
    assert cs_tau_integral(make_d(3, 0.5), -1.0) == pytest.approx(2.0 / math.pi, rel=1e-6)
    d = make_d(2, 0.75)
    assert cs_tau_integral(d, 0.5) == pytest.approx(cs_tau_closed(d, 0.5), rel=1e-6)


def test_integral_rejects_high_dimension():
    with pytest.raises(UnsupportedDimensionError):
        cs_tau_integral(make_d(4, 0.5), -1.0)


@pytest.mark.slow
def test_integral_matches_closed_form_on_grid():
    for N, s in DIM_GRID:
        d = make_d(N, s)
        for tau in tau_grid(d):
            closed = cs_tau_closed(d, tau)
            integral = cs_tau_integral(d, tau)
            error = abs(integral - closed) / max(abs(closed), 1e-3)
            assert error <= 1e-6, f"N={N} s={s} tau={tau}: closed={closed} integral={integral}"


def test_mu_zero_values():
    assert mu_zero(make_d(3, 0.5)) == pytest.approx(-2.0 / math.pi, rel=1e-14)
    expected = -(2.0 ** 0.5) * math.gamma(0.375) ** 2 / math.gamma(0.125) ** 2
    assert mu_zero(make_d(1, 0.25)) == pytest.approx(expected, rel=1e-14)


def test_tau_pm_endpoints():
    for N, s in DIM_GRID:
        d = make_d(N, s)
        hardy = tau_pm(d, 0.0)
        assert hardy.tau_minus == pytest.approx(2.0 * s - N, abs=1e-10)
        assert hardy.tau_plus == pytest.approx(0.0, abs=1e-10)
        critical = tau_pm(d, mu_zero(d))
        assert critical.tau_minus == critical.tau_plus == d.midpoint


def test_tau_pm_substitution_residual():
    for N, s in DIM_GRID:
        d = make_d(N, s)
        mu0 = mu_zero(d)
        for mu in (mu0, 0.5 * mu0, 0.0, 1.0):
            hardy = tau_pm(d, mu)
            assert hardy.tau_minus <= d.midpoint <= hardy.tau_plus
            assert hardy.tau_minus + hardy.tau_plus == pytest.approx(2.0 * s - N, abs=1e-15)
            assert abs(cs_tau_closed(d, hardy.tau_plus) + mu) <= 1e-10
            assert abs(cs_tau_closed(d, hardy.tau_minus) + mu) <= 1e-10


def test_tau_pm_reference_coupling():
    d = make_d(3, 0.5)
    hardy = tau_pm(d, 0.3)
    assert cs_tau_closed(d, hardy.tau_plus) == pytest.approx(-0.3, abs=1e-10)
    assert cs_tau_closed(d, hardy.tau_minus) == pytest.approx(-0.3, abs=1e-10)


def test_tau_pm_below_critical_coupling():
    d = make_d(3, 0.5)
    with pytest.raises(DomainError):
        tau_pm(d, mu_zero(d) - 0.01)


def test_derivatives_at_zero():
    for N, s in DIM_GRID:
        d = make_d(N, s)
        c1, c2 = cs_derivs_at_zero(d)
        analytic = -(2.0 ** (2.0 * s - 1.0)) * math.gamma(N / 2.0) * math.gamma(s) / math.gamma((N - 2.0 * s) / 2.0)
        assert c1 == pytest.approx(analytic, rel=1e-8)
        assert c1 < 0.0 and c2 < 0.0
        # I_m = C_s'(0)·m линеен по m
        assert c1 * 0 == 0.0
