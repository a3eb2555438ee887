import math

import numpy as np
import pytest
from scipy import integrate
from scipy.interpolate import PchipInterpolator

from core.errors import DomainError, SingularityError
from dirac.green import (
    correction_mean,
    free_green,
    green_apply,
    green_ball,
    green_kernel,
    green_origin,
    radial_green_kernel,
    riesz_mean,
    torsion,
)
from flap.models import RadialFunction
from flap.radial import frac_lap_radial
from quadrature.angular import sphere_mean
from specfun.gamma import riesz_constant, sphere_measure
from specfun.models import DimPair


def make_d(N=3, s=0.5):
    return DimPair(N=N, s=s)


def ball_function(evaluate, label):
    return RadialFunction(evaluate=evaluate, tau_origin=0.0, tau_infty=0.0, cutoff=1.0, label=label)


def dyda_pair(d):
    """f = 1 − (1+2s/N)ρ² и G[f] = (1−r²)^{s+1}/D, D = 2^{2s}Γ(s+2)Γ(N/2+s)/Γ(N/2)."""
    N, s = d.N, d.s
    const = 2.0 ** (2.0 * s) * math.gamma(s + 2.0) * math.gamma(N / 2.0 + s) / math.gamma(N / 2.0)
    f = ball_function(lambda r: 1.0 - (1.0 + 2.0 * s / N) * r * r, "dyda")
    return f, lambda r: (1.0 - r * r) ** (s + 1.0) / const


@pytest.mark.parametrize("N,s", [(1, 0.25), (2, 0.5), (3, 0.5), (3, 0.75)])
def test_green_ball_limits(N, s):
    d = make_d(N, s)
    a = riesz_constant(d)
    # у полюса поправка ограничена: G·r^{N−2s} → a
    assert green_ball(d, 1e-9) * 1e-9 ** (N - 2.0 * s) == pytest.approx(a, rel=1e-3)
    # на границе шара G → 0
    edge = [green_ball(d, 1.0 - h) for h in (1e-4, 1e-8, 1e-12)]
    assert edge[0] > edge[1] > edge[2]
    assert edge[2] < 1e-2 * free_green(d, 1.0)
    for r in np.linspace(0.05, 0.95, 10):
        assert 0.0 < green_ball(d, r) <= free_green(d, r)


def test_green_origin_matches_scalar():
    d = make_d(3, 0.75)
    radii = np.array([0.1, 0.4, 0.8])
    expected = [green_ball(d, r) for r in radii]
    assert np.allclose(green_origin(d, radii), expected, rtol=1e-13)


def test_green_kernel_symmetry():
    d = make_d(3, 0.5)
    rng = np.random.default_rng(7)
    for _ in range(10):
        x = rng.uniform(-0.5, 0.5, 3)
        y = rng.uniform(-0.5, 0.5, 3)
        assert green_kernel(d, x, y) == pytest.approx(green_kernel(d, y, x), rel=1e-8)


def test_green_domain_errors():
    d = make_d(3, 0.5)
    with pytest.raises(DomainError):
        green_ball(d, 1.0)
    with pytest.raises(DomainError):
        green_ball(d, 0.0)
    with pytest.raises(SingularityError):
        green_kernel(d, [0.2, 0, 0], [0.2, 0, 0])
    with pytest.raises(DomainError):
        green_kernel(d, [0.2, 0], [0.1, 0])


@pytest.mark.parametrize("N,s", [(1, 0.25), (2, 0.25), (2, 0.75), (3, 0.5), (3, 0.3)])
def test_riesz_mean_matches_angular_quadrature(N, s):
    power = (N - 2.0 * s) / 2.0
    for r, rho in [(0.3, 0.6), (0.5, 0.45), (0.9, 0.1)]:
        assert float(riesz_mean(N, r, rho, power)) == pytest.approx(sphere_mean(N, r, rho, power), rel=1e-8)


@pytest.mark.parametrize("N,s", [(2, 0.5), (3, 0.5), (3, 0.75)])
def test_radial_kernel_matches_direct_angular_integral(N, s):
    d = make_d(N, s)
    r, rho = 0.3, 0.6

    def at_angle(theta):
        x = np.zeros(N)
        x[0] = r
        y = np.zeros(N)
        y[0], y[1] = rho * math.cos(theta), rho * math.sin(theta)
        return green_kernel(d, x, y)

    if N == 2:
        direct, _ = integrate.quad(at_angle, 0.0, math.pi, epsrel=1e-12)
        direct *= 2.0
    else:
        direct, _ = integrate.quad(lambda t: at_angle(t) * math.sin(t), 0.0, math.pi, epsrel=1e-12)
        direct *= 2.0 * math.pi
    assert float(radial_green_kernel(d, r, rho)) == pytest.approx(direct, rel=1e-7)


def test_radial_kernel_at_pole_is_sphere_times_green():
    d = make_d(3, 0.5)
    assert float(radial_green_kernel(d, 0.4, 1e-9)) == pytest.approx(
        sphere_measure(3) * green_ball(d, 0.4), rel=1e-6)


def test_correction_is_regular_on_diagonal():
    d = make_d(1, 0.25)
    value = correction_mean(d, 0.5, 0.5)
    assert np.isfinite(value) and value > 0.0


def test_green_apply_zero():
    d = make_d(3, 0.5)
    zero = ball_function(lambda r: 0.0, "0")
    assert green_apply(d, zero, 0.5) == 0.0


def test_green_apply_constant_is_torsion():
    d = make_d(2, 0.25)
    one = ball_function(lambda r: 1.0, "1")
    for r in (0.2, 0.7):
        assert green_apply(d, one, r) == pytest.approx(float(torsion(d, r)), rel=1e-12)


@pytest.mark.parametrize("N,s", [(1, 0.25), (2, 0.5), (3, 0.5), (3, 0.75)])
def test_green_apply_polynomial_closed_form(N, s):
    d = make_d(N, s)
    f, exact = dyda_pair(d)
    for r in (0.2, 0.5, 0.8):
        assert green_apply(d, f, r, tol=1e-10) == pytest.approx(exact(r), rel=1e-5), (N, s, r)


def test_flap_inverts_torsion():
    d = make_d(3, 0.5)
    u = ball_function(lambda r: float(torsion(d, r)), "torsion")
    for r in (0.3, 0.6):
        assert frac_lap_radial(d, u, r, 1e-9) == pytest.approx(1.0, rel=1e-4)


@pytest.mark.slow
def test_flap_of_green_apply_returns_density():
    # двойной путь: G[f] табулируется, затем (−Δ)^s возвращает f внутри шара
    d = make_d(3, 0.5)
    f = ball_function(lambda r: max(0.0, 1.0 - (r / 0.8) ** 2) ** 3, "bump")
    nodes = 1.0 - (1.0 - np.linspace(0.0, 1.0, 65)[:-1]) ** 2
    nodes[0] = 1e-3
    ratio = [green_apply(d, f, x, tol=1e-9) / (1.0 - x * x) ** d.s for x in nodes]
    smooth = PchipInterpolator(nodes, ratio, extrapolate=True)
    u = ball_function(lambda r: float(smooth(r)) * (1.0 - r * r) ** d.s, "G[bump]")
    for r in (0.2, 0.4, 0.6):
        assert frac_lap_radial(d, u, r, 1e-8) == pytest.approx(f.value(r), abs=1e-2), r
