import pytest

from params.models import ProblemParams
from profiles.energy import profile_energy
from profiles.shooting import solve_selfsimilar
from specfun.gamma import extension_constant, sphere_measure
from specfun.models import DimPair


def make_pp(N=3, s=0.5, p=4.0, eps=-1):
    return ProblemParams(d=DimPair(N=N, s=s), p=p, eps=eps)


@pytest.mark.parametrize("N,s,p,eps", [(3, 0.5, 4.0, -1), (3, 0.5, 1.45, 1)])
def test_energy_of_critical_profile(N, s, p, eps):
    pp = make_pp(N, s, p, eps)
    _, prof = solve_selfsimilar(pp, n=64)
    # на решении ∫(ω'² − Λω²)dμ_s = ω(0)·dω/dφ^s(0) = −εκ_s ω(0)^{p+1}
    kappa = extension_constant(pp.d)
    expected = -sphere_measure(N) * eps * kappa * prof.omega0 ** (p + 1.0) * (p - 1.0) / (2.0 * (p + 1.0))
    assert profile_energy(pp, prof) == pytest.approx(expected, rel=1e-2)
