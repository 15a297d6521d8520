"""Jacobi elliptic sine and the complete elliptic integral of the first kind.

Both are computed from the arithmetic-geometric mean ladder, so no special
function library is needed.  Only real arguments and moduli 0 < rho < 1 are
supported.
"""

import math

from .errors import DomainError

MAX_LADDER = 24
LADDER_TOL = 1e-15


def check_modulus(rho):
    rho = float(rho)
    if not 0.0 < rho < 1.0:
        raise DomainError(f"elliptic modulus must satisfy 0 < rho < 1, got {rho!r}")
    return rho


def _ladder(rho):
    """Descending AGM ladder starting from (1, rho', rho).

    Returns the lists ``a`` and ``c`` up to the first rung with c below
    ``LADDER_TOL``.
    """
    a = [1.0]
    b = math.sqrt((1.0 - rho) * (1.0 + rho))
    c = [rho]
    for _ in range(MAX_LADDER):
        if abs(c[-1]) < LADDER_TOL:
            break
        an, bn = a[-1], b
        a.append(0.5 * (an + bn))
        c.append(0.5 * (an - bn))
        b = math.sqrt(an * bn)
    return a, c


def complete_K(rho):
    """Quarter period K(rho) = int_0^{pi/2} dtheta / sqrt(1 - rho^2 sin^2 theta)."""
    rho = check_modulus(rho)
    a, _ = _ladder(rho)
    return math.pi / (2.0 * a[-1])


def jacobi_sn(z, rho):
    """Jacobi elliptic sine sn(z, rho) for real z.

    Uses the descending Landen recursion for the amplitude: with the AGM
    rungs (a_n, c_n) one starts from phi_N = 2^N a_N z and walks back down
    with phi_{n-1} = (phi_n + asin(c_n sin(phi_n) / a_n)) / 2.
    """
    rho = check_modulus(rho)
    a, c = _ladder(rho)
    n = len(a) - 1
    phi = math.ldexp(a[n], n) * float(z)
    for k in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[k] / a[k] * math.sin(phi)))
    return math.sin(phi)


def xi_of_z(z, rho):
    """The algebraic variable xi = sn(z, rho)^2, always in [0, 1]."""
    s = jacobi_sn(z, rho)
    return min(s * s, 1.0)
