"""Nested-sum (three-term recurrence formula) solutions of the Lame equation.

About xi = 0 the Frobenius recurrence is regrouped by the number n of
A-steps.  With mu = -rho^2 xi and eta = -rho^2 xi^2 the solution of exponent
lam reads

    y = xi^lam * sum_n y_n mu^n,

where y_n is an n-fold nested sum over i_0 <= ... <= i_n whose level-k
Pochhammer ratios carry the parameters

    (-alpha/4 + (k+lam)/2)_i (alpha/4 + 1/4 + (k+lam)/2)_i
    ------------------------------------------------------
          (1 + (k+lam)/2)_i (3/4 + (k+lam)/2)_i

and whose A-factor at level k, index i, with s = i + (k+lam)/2, is

    (-(1 + rho^-2) s^2 + h rho^-2 / 16) / ((s + 1/2)(s + 1/4)).

For alpha on one of the lattices alpha = 2(2 a_j + j + lam) or
alpha = -2(2 a_j + j + lam) - 1 the eta-chains of every other level
terminate and the solution becomes a polynomial in eta at each order in mu.
"""

import enum
import math
import warnings
from dataclasses import dataclass


from . import nested
from .errors import BranchError, DivergenceError, QuantizationError
from .frobenius import SeriesPoly

DEFAULT_N_MU = 8
DEFAULT_N_INNER = 12


class Kind(enum.Enum):
    FIRST = 0.0
    SECOND = 0.5

    @property
    def lam(self):
        return self.value


class Family(enum.Enum):
    INFINITE = "infinite"
    POLY_TYPE1 = "poly1"


class Branch(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


class QuantizedAlphaWarning(RuntimeWarning):
    """The infinite-series evaluator was handed an alpha on a polynomial lattice."""


@dataclass(frozen=True)
class SolutionSpec:
    kind: Kind = Kind.FIRST
    family: Family = Family.INFINITE
    n_mu: int = DEFAULT_N_MU
    n_inner: int = DEFAULT_N_INNER

    def __post_init__(self):
        if self.n_mu < 0 or self.n_inner < 0:
            raise ValueError("truncation orders must be nonnegative")


@dataclass(frozen=True)
class Type1Quantization:
    """Polynomial lattice point: alpha fixed by (j, alpha_j, branch, lam)."""

    j: int
    alpha_j: int
    branch: Branch = Branch.PLUS
    lam: float = 0.0

    def __post_init__(self):
        if self.j < 0 or self.alpha_j < 0:
            raise ValueError("j and alpha_j must be nonnegative integers")
        if self.lam not in (0.0, 0.5):
            raise ValueError("lam must be 0 or 1/2")


def quantized_alpha(q):
    base = 2.0 * (2 * q.alpha_j + q.j + q.lam)
    return base if q.branch is Branch.PLUS else -base - 1.0


def level_limit(alpha, k, lam, branch):
    """Floor-rule cap on the eta-index at level k (negative means empty)."""
    top = alpha / 4.0 if branch is Branch.PLUS else (-alpha - 1.0) / 4.0
    return math.floor(top - (k + lam) / 2.0 + 1e-12)


def level_limits(q, n_mu):
    alpha = quantized_alpha(q)
    return [level_limit(alpha, k, q.lam, q.branch) for k in range(n_mu + 1)]


def lame_series(p, lam):
    """Level parameters and A-factors of the nested sum for exponent lam."""
    rho2 = p.rho ** 2
    shift = lam / 2.0

    def level(k):
        s = k / 2.0 + shift
        return nested.Level(-p.alpha / 4.0 + s, p.alpha / 4.0 + 0.25 + s, 1.0 + s, 0.75 + s)

    def afactor(k, i):
        s = i + k / 2.0 + shift
        return (-(1.0 + 1.0 / rho2) * s * s + p.h / (16.0 * rho2)) / ((s + 0.5) * (s + 0.25))

    return nested.NestedSeries(level, afactor)


def on_lattice(alpha, lam):
    """True when (alpha, lam) sits on a type-1 polynomial lattice."""
    for x in (alpha / 4.0 - lam / 2.0, (-alpha - 1.0) / 4.0 - lam / 2.0):
        for k in (0, 1):
            m = x - k / 2.0
            if abs(m - round(m)) < 1e-12 and round(m) >= 0:
                return True
    return False


def _variables(p, xi):
    return -p.rho ** 2 * xi, -p.rho ** 2 * xi * xi


def _check_eta(eta):
    if abs(eta) >= 1.0:
        raise DivergenceError(f"|eta| = {abs(eta):.3g} >= 1: the eta-sums diverge")


def _infinite(p, spec, xi, lam):
    if on_lattice(p.alpha, lam):
        warnings.warn(
            f"alpha={p.alpha} is on a polynomial lattice; eta-chains truncate silently, "
            "use lf_poly_type1 instead", QuantizedAlphaWarning, stacklevel=3)
    mu, eta = _variables(p, xi)
    _check_eta(eta)
    return nested.evaluate(lame_series(p, lam), mu, eta, spec.n_mu, spec.n_inner)


def lf_infinite(p, spec, xi):
    """First-kind (exponent 0) solution about xi = 0, y(0) = 1."""
    return _infinite(p, spec, xi, 0.0)


def ls_infinite(p, spec, xi):
    """Second-kind (exponent 1/2) solution about xi = 0, y ~ xi^(1/2)."""
    if xi < 0:
        raise BranchError("second-kind solution needs xi >= 0")
    return math.sqrt(xi) * _infinite(p, spec, xi, 0.5)


def _check_quantized(p, q):
    alpha = quantized_alpha(q)
    if abs(p.alpha - alpha) > 1e-12 * max(1.0, abs(alpha)):
        raise QuantizationError(
            f"alpha={p.alpha} does not match the lattice value {alpha} of {q}", level=q.j)
    return alpha


def lf_poly_type1(p, q, n_mu, xi):
    """Type-1 polynomial solution: every terminating eta-chain is summed in full.

    Levels whose upper parameter is a nonpositive integer stop on their own
    (the running product hits zero).  The remaining levels are summed up to
    index max(limit of level 0, DEFAULT_N_INNER), enough for the rapid
    geometric decay at |eta| well inside the unit disc.
    """
    _check_quantized(p, q)
    mu, eta = _variables(p, xi)
    _check_eta(eta)
    n_inner = max(DEFAULT_N_INNER, level_limit(p.alpha, 0, q.lam, q.branch) + 1) + n_mu
    val = nested.evaluate(lame_series(p, q.lam), mu, eta, n_mu, n_inner)
    if q.lam == 0:
        return val
    if xi < 0:
        raise BranchError("second-kind solution needs xi >= 0")
    return math.sqrt(xi) * val


def y_blocks(p, spec, xi, limits=None):
    """Per-order partial sums y_n mu^n (without the xi^lam prefactor)."""
    mu, eta = _variables(p, xi)
    return nested.blocks(lame_series(p, spec.kind.lam), mu, eta, spec.n_mu, spec.n_inner, limits)


def expand_to_xi_coeffs(p, spec, N):
    """Taylor coefficients d_0..d_N in xi of the truncated nested sum."""
    if N > spec.n_mu + 2 * spec.n_inner:
        raise ValueError("N exceeds the orders reachable by the truncation")
    r = -p.rho ** 2
    d = nested.power_coefficients(lame_series(p, spec.kind.lam), r, r, spec.n_mu, spec.n_inner, N)
    return SeriesPoly(spec.kind.lam, d)
