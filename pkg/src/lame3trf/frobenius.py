"""Frobenius series of the Lame equation in the algebraic variable xi = sn^2.

With xi as independent variable and b = rho^-2 the equation, cleared of
denominators, reads

    P(xi) y'' + Q(xi) y' + R(xi) y = 0,
    P = 4 xi (xi - 1)(xi - b),
    Q = 2 (3 xi^2 - 2 (1 + b) xi + b),
    R = -alpha (alpha + 1) xi + h b.

Substituting y = sum_n c_n xi^(n + lam) gives the indicial roots lam = 0 and
lam = 1/2 and the three-term recurrence c_{n+1} = A_n c_n + B_n c_{n-1}.
This module is the ground truth the nested-sum evaluators are checked
against.
"""

from dataclasses import dataclass, field

import numpy as np

from .elliptic import check_modulus, xi_of_z
from .errors import BranchError, DomainError

INDICIAL_ROOTS = (0.0, 0.5)
FD_STEP = 1e-4
XI_FD_STEP = 1e-3


@dataclass(frozen=True)
class LameParams:
    """Modulus rho, accessory parameter h and exponent parameter alpha."""

    rho: float
    h: float
    alpha: float

    def __post_init__(self):
        check_modulus(self.rho)

    @property
    def b(self):
        return self.rho ** -2


@dataclass(frozen=True)
class SeriesPoly:
    """Truncated series xi^lam * sum_n coeffs[n] xi^n."""

    lam: float
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    @property
    def order(self):
        return len(self.coeffs) - 1


def _check_lambda(lam):
    if not any(lam == r for r in INDICIAL_ROOTS):
        raise DomainError(f"lambda={lam!r} is not an indicial root (expected 0 or 1/2)")


def indicial_coefficient(p, lam):
    """Coefficient of c_0 xi^(lam - 1) after substitution: 2 b lam (2 lam - 1)."""
    return 2.0 * p.b * lam * (2.0 * lam - 1.0)


def recurrence_coeffs(p, lam, n):
    """(A_n, B_n) with c_{n+1} = A_n c_n + B_n c_{n-1}."""
    _check_lambda(lam)
    b, s = p.b, n + lam
    den = 2.0 * b * (s + 1.0) * (2.0 * s + 1.0)
    A = (4.0 * (1.0 + b) * s * s - p.h * b) / den
    B = -(2.0 * s - 2.0 - p.alpha) * (2.0 * s - 1.0 + p.alpha) / den
    return A, B


def frobenius_coefficients(p, lam, N):
    """First N+1 Frobenius coefficients with c_0 = 1."""
    _check_lambda(lam)
    c = np.zeros(N + 1)
    c[0] = 1.0
    prev = 0.0
    for n in range(N):
        A, B = recurrence_coeffs(p, lam, n)
        c[n + 1] = A * c[n] + B * prev
        prev = c[n]
    return SeriesPoly(lam, c)


def _xi_power(xi, lam):
    if lam == 0:
        return 1.0
    if xi < 0:
        raise BranchError("xi^(1/2) is undefined for negative xi")
    return np.sqrt(xi)


def eval_series(s, xi):
    """xi^lam times the Horner sum of the coefficients."""
    return _xi_power(xi, s.lam) * np.polynomial.polynomial.polyval(xi, s.coeffs)


def series_derivatives(s, xi):
    """(y, y', y'') of the truncated series, differentiated exactly termwise."""
    P = np.polynomial.Polynomial(s.coeffs)
    g, g1, g2 = P(xi), P.deriv(1)(xi), P.deriv(2)(xi)
    if s.lam == 0:
        return g, g1, g2
    if xi <= 0:
        raise BranchError("derivatives of a xi^(1/2) series need xi > 0")
    r = np.sqrt(xi)
    return (r * g,
            0.5 * g / r + r * g1,
            -0.25 * g / (r * xi) + g1 / r + r * g2)


def cleared_operator(p, xi, y, dy, d2y):
    """P y'' + Q y' + R y for given values of y and its xi-derivatives."""
    b = p.b
    P = 4.0 * xi * (xi - 1.0) * (xi - b)
    Q = 2.0 * ((xi - 1.0) * (xi - b) + xi * (xi - b) + xi * (xi - 1.0))
    R = -p.alpha * (p.alpha + 1.0) * xi + p.h * b
    return P * d2y + Q * dy + R * y


def ode_residual(s, p, xi):
    """Residual of the cleared xi-form equation for a truncated series."""
    y, dy, d2y = series_derivatives(s, xi)
    return cleared_operator(p, xi, y, dy, d2y)


def _as_function(f):
    if isinstance(f, SeriesPoly):
        return lambda xi: eval_series(f, xi)
    return f


def second_difference(g, x, step):
    """Five-point central estimate of g''(x)."""
    h = step
    return (-g(x + 2 * h) + 16 * g(x + h) - 30 * g(x) + 16 * g(x - h) - g(x - 2 * h)) / (12 * h * h)


def first_difference(g, x, step):
    """Five-point central estimate of g'(x)."""
    h = step
    return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h)


def ode_residual_z(f, p, z, step=FD_STEP):
    """y''(z) - (alpha(alpha+1) rho^2 sn^2 - h) y in the elliptic variable z.

    ``f`` is a :class:`SeriesPoly` or any callable of xi; the z-derivative is
    taken by central differences.
    """
    f = _as_function(f)

    def y(t):
        return f(xi_of_z(t, p.rho))

    pot = p.alpha * (p.alpha + 1.0) * p.rho**2 * xi_of_z(z, p.rho) - p.h
    return second_difference(y, z, step) - pot * y(z)


def ode_residual_xi_fd(f, p, xi, rel_step=XI_FD_STEP):
    """rho^2 times the cleared xi-form residual, with finite-difference derivatives.

    On the real interval 0 < xi < 1 this coincides with the z-form residual by
    the chain rule.  It is the way to test solutions living at xi > 1, which
    no real z reaches.  The default step is larger than in the z-form: at
    xi >> 1 the leading coefficient grows like xi^3 and amplifies roundoff.
    """
    f = _as_function(f)
    step = rel_step * max(1.0, abs(xi))
    y = f(xi)
    dy = first_difference(f, xi, step)
    d2y = second_difference(f, xi, step)
    return p.rho**2 * cleared_operator(p, xi, y, dy, d2y)
