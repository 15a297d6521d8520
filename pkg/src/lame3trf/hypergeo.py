"""Pochhammer symbols and the Gauss hypergeometric series by direct summation."""

from dataclasses import dataclass

from .errors import DivergenceError, PoleError

DEFAULT_TOL = 1e-15
DEFAULT_MAX_TERMS = 10_000


@dataclass(frozen=True)
class HypergeometricArgs:
    """Parameters (a, b; c) and argument w of 2F1(a, b; c; w)."""

    a: float
    b: float
    c: float
    w: float


def pochhammer(x, n):
    """Rising factorial (x)_n = x (x+1) ... (x+n-1), by iterated product."""
    if n < 0:
        raise ValueError("pochhammer order must be nonnegative")
    out = 1.0
    for k in range(n):
        out *= x + k
    return out


def nonpositive_integer(x, tol=1e-12):
    """Return m if x == -m for a nonnegative integer m, else None."""
    r = round(x)
    if r <= 0 and abs(x - r) <= tol:
        return int(-r)
    return None


def termination_order(args):
    """Index of the last nonzero term of a terminating series, or None.

    Also checks the lower parameter: a pole in (c)_i reached before the
    series terminates raises :class:`PoleError`.
    """
    ends = [m for m in (nonpositive_integer(args.a), nonpositive_integer(args.b)) if m is not None]
    last = min(ends) if ends else None
    mc = nonpositive_integer(args.c)
    if mc is not None and (last is None or last > mc):
        raise PoleError(f"lower parameter c={args.c} hits a pole before the series ends")
    return last


def _terms(args, max_terms, tol, weight):
    last = termination_order(args)
    if last is None and abs(args.w) >= 1.0:
        raise DivergenceError(f"non-terminating 2F1 needs |w| < 1, got w={args.w}")
    a, b, c, w = args.a, args.b, args.c, args.w
    t = 1.0
    total = weight(0) * t
    n_max = last if last is not None else max_terms
    for i in range(n_max):
        t *= (a + i) * (b + i) / ((c + i) * (i + 1)) * w
        term = weight(i + 1) * t
        total += term
        if last is None and abs(term) < tol * abs(total) and abs(t) < tol * max(1.0, abs(total)):
            break
    return total


def gauss_2f1(args, max_terms=DEFAULT_MAX_TERMS, tol=DEFAULT_TOL):
    """Partial sum of sum_i (a)_i (b)_i / ((c)_i i!) w^i.

    Terminating series are summed in full; otherwise summation stops when a
    term drops below ``tol`` relative to the running sum.
    """
    return _terms(args, max_terms, tol, lambda i: 1.0)


def weighted_2f1(args, shift=0.0, max_terms=DEFAULT_MAX_TERMS, tol=DEFAULT_TOL):
    """Termwise image of w^shift 2F1 under (w d/dw)^2, divided by w^shift.

    Equals sum_i (a)_i (b)_i / ((c)_i i!) (i + shift)^2 w^i.
    """
    return _terms(args, max_terms, tol, lambda i: (i + shift) ** 2)


def moment_2f1(args, weight, max_terms=DEFAULT_MAX_TERMS, tol=DEFAULT_TOL):
    """sum_i (a)_i (b)_i / ((c)_i i!) weight(i) w^i for an arbitrary weight.

    ``weight`` is usually a quadratic in i, i.e. a combination of the first
    and second moments of the series.  ``w`` may be complex when the series
    terminates.
    """
    return _terms(args, max_terms, tol, weight)
