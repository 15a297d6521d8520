import numpy as np
import pytest
from scipy.optimize import brentq

from lame3trf.elliptic import complete_K, xi_of_z
from lame3trf.errors import DomainError
from lame3trf.frobenius import LameParams, ode_residual_xi_fd, ode_residual_z
from lame3trf.heunlocal import Regime, heun_domain, local_solution

# xi windows where each local solution lives (its own variable small)
XI_WINDOWS = {
    1: (0.05, 0.35), 2: (0.05, 0.35),
    3: (0.55, 0.95), 4: (0.55, 0.95),
    5: (6.0, 15.0),
    6: (0.05, 0.5), 7: (0.05, 0.5),
    8: (0.75, 0.97), 9: (0.5, 0.97),
}
MIN_MARGIN = 0.05


def z_of_xi(xi, rho):
    return brentq(lambda t: xi_of_z(t, rho) - xi, 0.0, complete_K(rho), xtol=1e-15)


def sample_admissible(d, n, seed):
    """n seeded (params, xi) pairs inside the descriptor's region and evaluable."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        p = LameParams(rng.uniform(0.3, 0.8), rng.uniform(-3, 3), rng.uniform(-3, 3))
        xi = rng.uniform(*XI_WINDOWS[d.id])
        if heun_domain(d, Regime.GENERIC, xi, p.rho).margin < MIN_MARGIN:
            continue
        try:
            local_solution(d, p, xi)
        except DomainError:
            continue
        out.append((p, xi))
    return out


def lame_residual(f, p, xi):
    """Residual of the z-form equation; xi > 1 goes through the xi-form (same quantity)."""
    if xi < 1.0:
        return ode_residual_z(f, p, z_of_xi(xi, p.rho))
    return ode_residual_xi_fd(f, p, xi)


@pytest.fixture
def admissible():
    return sample_admissible


@pytest.fixture
def residual():
    return lame_residual
