import logging

import numpy as np
from scipy import integrate
from scipy.interpolate import PchipInterpolator

from params.models import ProblemParams
from profiles.grid import cell_moments, tail_mass
from profiles.models import Profile
from profiles.picard import inner_integrals
from quadrature.rules import hemisphere_rule
from specfun.gamma import extension_constant, sphere_measure

logger = logging.getLogger(__name__)


def profile_energy(pp: ProblemParams, prof: Profile, panels: int = 64) -> float:
    """
    Радиальная энергия профиля
        |S^{N−1}|·[½∫(ω'² − Λω²)dμ_s + εκ_s/(p+1)·|ω(0)|^{p+1}].
    Кинетический член берётся из представления неподвижной точки
    ω' = Λ·B·I (I = ∫_φ^{π/2} ωW), поэтому функция рассчитана на решения T.
    В критической точке энергия равна −|S|εκ_s ω(0)^{p+1}(p−1)/(2(p+1)).
    """
    d = pp.d
    moments = cell_moments(d, prof.n)
    inner = inner_integrals(moments, prof.values)
    ratio = np.empty_like(inner)
    ratio[:-1] = inner[:-1] / moments.mu[:-1]
    ratio[-1] = prof.values[-1]
    grid = moments.grid

    def kinetic_density(sigma: float) -> float:
        j = float(np.interp(sigma, grid, ratio))
        b = np.sin(sigma) ** (2.0 * d.s - 1.0) * np.cos(sigma) ** (1 - d.N)
        return b * (tail_mass(d, sigma) * j) ** 2

    breakpoints = grid[1:-1]
    kinetic, _ = integrate.quad(kinetic_density, 0.0, 0.5 * np.pi, points=breakpoints,
                                limit=8 * len(breakpoints), epsabs=0.0, epsrel=1e-10)
    kinetic *= prof.lam ** 2

    rule = hemisphere_rule(d, panels)
    omega = PchipInterpolator(grid, prof.values)
    potential = rule.integrate(lambda phi: omega(phi) ** 2)

    kappa = extension_constant(d)
    boundary = pp.eps * kappa / (pp.p + 1.0) * abs(prof.omega0) ** (pp.p + 1.0)
    value = sphere_measure(d.N) * (0.5 * (kinetic - prof.lam * potential) + boundary)
    logger.debug(f"profile energy: kinetic={kinetic} potential={potential} boundary={boundary} -> {value}")
    return float(value)
