import numpy as np
import pytest
from scipy.interpolate import PchipInterpolator

from core.errors import RegimeError
from cylinder.system import (_jacobian, _residual_rows, angular_defect, assemble_system, discrete_conormal,
                             interior_residual, newton_solve, profile_on_grid, steady_state)
from params.models import ProblemParams
from params.regime import CLAUSES
from params.self_similar import c_p
from profiles.shooting import solve_selfsimilar
from specfun.models import DimPair


def make_pp(N=3, s=0.5, p=4.0, eps=-1):
    return ProblemParams(d=DimPair(N=N, s=s), p=p, eps=eps)


@pytest.fixture(scope="module")
def le_system():
    return assemble_system(make_pp(), nt=16, nphi=32)


@pytest.fixture(scope="module")
def le_root(le_system):
    # ω_root модуля профилей на узлах цилиндра
    _, prof = solve_selfsimilar(make_pp(), n=le_system.nphi)
    return PchipInterpolator(prof.grid, prof.values)(le_system.phi_grid)


@pytest.fixture(scope="module")
def le_omega(le_system):
    return steady_state(le_system)


def eigen_error(N, s, nphi):
    system = assemble_system(make_pp(N, s, 4.0, -1), nt=2, nphi=nphi)
    psi = np.sin(system.phi_grid) ** (2.0 * s)
    return float(np.max(np.abs(angular_defect(system, psi, 2.0 * s * N)))), discrete_conormal(system, psi)


@pytest.mark.parametrize("N,s", [(2, 0.25), (3, 0.5), (3, 0.75)])
def test_first_eigenpair_is_reproduced(N, s):
    error, conormal = eigen_error(N, s, 128)
    assert error <= 1e-3
    assert conormal == pytest.approx(-2.0 * s, rel=1e-3)


@pytest.mark.parametrize("N,s", [(2, 0.25), (3, 0.5)])
def test_eigenpair_error_shrinks_under_refinement(N, s):
    coarse, _ = eigen_error(N, s, 32)
    fine, _ = eigen_error(N, s, 64)
    assert fine < coarse / 3.0


def test_constants_lie_in_kernel():
    system = assemble_system(make_pp(), nt=2, nphi=16)
    ones = np.ones(system.n_phi)
    assert discrete_conormal(system, ones) == 0.0
    np.testing.assert_array_equal(angular_defect(system, ones, 0.0), np.zeros(system.n_phi))


def test_eigenpair_residual_with_replaced_lambda():
    pp = make_pp()
    system = assemble_system(pp, nt=4, nphi=32)
    psi = np.sin(system.phi_grid)
    w = np.tile(psi, (len(system.t_grid), 1))
    res = interior_residual(system, w, lam=2.0 * pp.s * pp.N)
    # строка 0 содержит нелинейное граничное условие, строки ячеек малы
    assert np.max(np.abs(res[:, 1:])) < 1e-3


def test_zero_data_gives_zero_solution(le_system):
    zero = np.zeros(le_system.n_phi)
    sol = newton_solve(le_system, zero, zero)
    assert sol.iterations == 0
    assert np.all(sol.w == 0.0)
    assert np.all(sol.energy_trace == 0.0)


def test_profile_root_is_discrete_steady_state(le_system, le_root):
    w = np.tile(le_root, (len(le_system.t_grid), 1))
    assert np.max(np.abs(interior_residual(le_system, w))) <= 1e-6


def test_steady_data_needs_no_iteration(le_system, le_root):
    sol = newton_solve(le_system, le_root, le_root)
    assert sol.iterations == 0
    assert sol.newton_residual <= 1e-6
    np.testing.assert_allclose(sol.w, np.tile(le_root, (len(le_system.t_grid), 1)), rtol=1e-14)


def test_steady_state_matches_profile(le_omega, le_root):
    np.testing.assert_allclose(le_omega, le_root, rtol=0.0, atol=1e-6)
    # Λ < 0: профиль уравнения Лейна–Эмдена убывает к оси
    assert np.all(np.diff(le_omega) < 0)


def test_steady_boundary_value_matches_closed_form():
    pp = make_pp()
    system = assemble_system(pp, nt=2, nphi=128)
    omega = steady_state(system)
    assert omega[0] == pytest.approx(c_p(pp), rel=1e-3)
    assert profile_on_grid(system)[0] == pytest.approx(omega[0], rel=1e-12)


def test_profile_data_on_long_cylinder_is_stationary():
    system = assemble_system(make_pp(), nt=64, nphi=64)
    root = profile_on_grid(system)
    guess = np.tile(root, (len(system.t_grid) - 2, 1))
    sol = newton_solve(system, root, root, guess=guess)
    assert sol.iterations == 0
    assert sol.newton_residual <= 1e-6


def test_jacobian_matches_finite_differences():
    pp = make_pp()
    system = assemble_system(pp, nt=4, nphi=8)
    t = system.t_grid[:, None]
    phi = system.phi_grid[None, :]
    w = 0.6 + 0.3 * np.cos(phi) * (1.0 + 0.2 * t) + 0.05 * np.sin(3.0 * t)
    jac = _jacobian(system, w).toarray()
    m = system.n_phi
    inner = w[1:-1].ravel()
    step = 1e-6
    numeric = np.empty_like(jac)
    for k in range(inner.size):
        plus, minus = inner.copy(), inner.copy()
        plus[k] += step
        minus[k] -= step
        w_plus = np.vstack([w[0], plus.reshape(-1, m), w[-1]])
        w_minus = np.vstack([w[0], minus.reshape(-1, m), w[-1]])
        numeric[:, k] = (_residual_rows(system, w_plus, system.lam).ravel()
                         - _residual_rows(system, w_minus, system.lam).ravel()) / (2.0 * step)
    np.testing.assert_allclose(jac, numeric, rtol=1e-6, atol=1e-7)
    # граничная строка: производная нелинейного потока по w(t, 0)
    assert jac[0, 0] == pytest.approx(numeric[0, 0], rel=1e-7)


def test_mixed_data_converges(le_system, le_omega):
    sol = newton_solve(le_system, 1.2 * le_omega, 0.8 * le_omega)
    assert sol.newton_residual < 1e-8
    assert sol.iterations >= 1
    assert np.all(np.isfinite(sol.w))
    np.testing.assert_array_equal(sol.w[0], 1.2 * le_omega)
    np.testing.assert_array_equal(sol.w[-1], 0.8 * le_omega)


def test_sobolev_exponent_rejected():
    # N=3, s=1/2: p_S = (N+2s)/(N−2s) = 2, Θ = 0
    with pytest.raises(RegimeError) as err:
        assemble_system(make_pp(p=2.0), nt=8, nphi=8)
    assert err.value.clause == CLAUSES["sobolev"]


def test_degenerate_cylinder_rejected():
    with pytest.raises(ValueError):
        assemble_system(make_pp(), nt=1, nphi=8)
    with pytest.raises(ValueError):
        assemble_system(make_pp(), nt=8, nphi=8, t_start=1.0, t_end=1.0)


def test_non_finite_guess_rejected(le_system):
    zero = np.zeros(le_system.n_phi)
    guess = np.full((len(le_system.t_grid) - 2, le_system.n_phi), np.nan)
    with pytest.raises(ValueError):
        newton_solve(le_system, zero, zero, guess=guess)
