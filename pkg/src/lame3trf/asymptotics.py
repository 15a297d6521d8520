"""Large-order limits of the series about xi = 0 and their convergence regions.

For large n the recurrence coefficients tend to A_n -> 1 + rho^2 and
B_n -> -rho^2, so the tail of the series behaves like the generating function
of c_{n+1} = (1 + rho^2) c_n - rho^2 c_{n-1}, i.e. 1 / ((1 - xi)(1 - rho^2 xi)).
"""

from dataclasses import dataclass

import numpy as np

from .errors import PoleError


@dataclass(frozen=True)
class DomainVerdict:
    inside: bool
    margin: float


def lame_asymptotic_limit(p, xi):
    """1 / (1 + rho^2 xi^2 - (1 + rho^2) xi)."""
    r2 = p.rho ** 2
    den = 1.0 + r2 * xi * xi - (1.0 + r2) * xi
    if den == 0.0:
        raise PoleError(f"pole of the limit function at xi={xi}")
    return 1.0 / den


def convergence_domain(xi, rho):
    """Verdict for |(1 + rho^2) xi - rho^2 xi^2| < 1, which for 0 <= xi is xi < 1.

    Past the singular point xi = rho^-2 the expression drops below 1 again;
    the margin is clipped by 1 - rho^2 xi so that band is reported outside.
    On [0, 1) the clip never binds.
    """
    r2 = rho ** 2
    margin = min(1.0 - abs((1.0 + r2) * xi - r2 * xi * xi), 1.0 - r2 * xi)
    return DomainVerdict(margin > 0, margin)


def lame_asymptotic_small_rho(p, xi):
    """Small-modulus limit 1 / (1 - (1 + rho^2) xi).

    It drops the rho^2 xi^2 term of the full limit, so the relative error is
    of order rho^2 xi^2 times the limit itself.
    """
    den = 1.0 - (1.0 + p.rho ** 2) * xi
    if den == 0.0:
        raise PoleError(f"pole of the small-rho limit at xi={xi}")
    return 1.0 / den


def small_rho_domain(xi, rho):
    """Verdict for (1 + rho^2) xi < 1."""
    margin = 1.0 - abs((1.0 + rho ** 2) * xi)
    return DomainVerdict(margin > 0, margin)


def tail_coefficients(rho, n):
    """Coefficients of the limiting recurrence c_{k+1} = (1+rho^2) c_k - rho^2 c_{k-1}."""
    r2 = rho ** 2
    c = np.empty(n + 1)
    c[0] = 1.0
    if n >= 1:
        c[1] = 1.0 + r2
    for k in range(1, n):
        c[k + 1] = (1.0 + r2) * c[k] - r2 * c[k - 1]
    return c


def tail_generating_sum(rho, xi, n=200):
    return np.polynomial.polynomial.polyval(xi, tail_coefficients(rho, n))
