import math

import numpy as np
import pytest
from scipy import special

from core.errors import ConvergenceError
from quadrature.adaptive import adaptive_integrate
from quadrature.rules import hemisphere_mass, hemisphere_rule, measure_density, nodal_rule
from specfun.models import DimPair


def make_d(N=3, s=0.5):
    return DimPair(N=N, s=s)


def test_hemisphere_mass_closed_forms():
    # s = 1/2: мера cos^{N−1}dφ
    assert hemisphere_mass(make_d(2, 0.5)) == pytest.approx(1.0, rel=1e-14)
    assert hemisphere_rule(make_d(2, 0.5), 8).total_mass == pytest.approx(1.0, rel=1e-13)
    assert hemisphere_mass(make_d(3, 0.5)) == pytest.approx(math.pi / 4.0, rel=1e-14)
    d = make_d(1, 0.25)
    assert hemisphere_rule(d, 16).total_mass == pytest.approx(hemisphere_mass(d), rel=1e-12)


def test_hemisphere_rule_elementary_antiderivative():
    for N in (2, 3):
        rule = hemisphere_rule(make_d(N, 0.5), 16)
        assert rule.integrate(np.sin) == pytest.approx(1.0 / N, rel=1e-12)


def test_hemisphere_rule_matches_adaptive():
    d = make_d(3, 0.7)
    rule = hemisphere_rule(d, 16)
    expected = adaptive_integrate(lambda t: measure_density(d, t) * math.cos(t), 0.0, 0.5 * math.pi,
                                  tol=1e-13, endpoint_exponents=(1.0 - 2.0 * d.s, 0.0))
    assert rule.integrate(np.cos) == pytest.approx(expected, abs=1e-10)
    assert rule.total_mass == pytest.approx(hemisphere_mass(d), rel=1e-12)


def test_hemisphere_rule_weights_positive_nodes_interior():
    for N, s in [(1, 0.25), (2, 0.75), (3, 0.5)]:
        rule = hemisphere_rule(make_d(N, s), 8, degree=4)
        assert np.all(rule.weights > 0)
        assert np.all((rule.nodes > 0) & (rule.nodes < 0.5 * math.pi))


def test_hemisphere_rule_refinement_rate():
    d = make_d(3, 0.5)
    exact = hemisphere_mass(d)
    errors = [abs(hemisphere_rule(d, n, degree=2).total_mass - exact) for n in (8, 16, 32)]
    assert errors[0] / errors[1] >= 4.0
    assert errors[1] / errors[2] >= 4.0


def test_hemisphere_rule_rejects_coarse_grids():
    with pytest.raises(ValueError):
        hemisphere_rule(make_d(), 4)


def test_nodal_rule():
    grid = np.linspace(0.0, 0.5 * math.pi, 5)
    masses = np.full(5, 0.25)
    rule = nodal_rule(make_d(), grid, masses)
    assert rule.apply(np.ones(5)) == pytest.approx(1.25)
    assert rule.order["kind"] == "nodal"


def test_adaptive_integrate_closed_forms():
    assert adaptive_integrate(lambda x: x ** -0.5, 0.0, 1.0) == pytest.approx(2.0, rel=1e-8)
    assert adaptive_integrate(lambda x: x ** -0.5, 0.0, 1.0, endpoint_exponents=(-0.5, 0.0)) == pytest.approx(2.0, rel=1e-12)
    assert adaptive_integrate(lambda x: 0.0, 0.0, 1.0) == 0.0
    expected = 0.5 * special.beta(0.3, 0.5)
    value = adaptive_integrate(lambda t: math.sin(t) ** -0.4, 0.0, 0.5 * math.pi)
    assert value == pytest.approx(expected, rel=1e-8)


def test_adaptive_integrate_reports_failure():
    with pytest.raises(ConvergenceError):
        adaptive_integrate(lambda x: 1.0 / x, 0.0, 1.0, tol=1e-12, limit=20)
