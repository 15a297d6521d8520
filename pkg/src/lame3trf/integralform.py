"""Integral representation of the first-order (one A-step) block.

For the polynomial family the one-A-step block

    y_1 = u * sum_{i0 <= i1} P_0(i0) F_0(i0) P_1(i0, i1) v^{i1}

can be written as a triple integral.  Writing the level-0 A-factor as
N(i) / ((i + e_t)(i + e_u)) and using the Beta integral for the lower
Pochhammer ratios of level 1 together with a residue at v' = 0 for the
upper ones gives

    y_1 = u * int_0^1 dt t^(e_t - 1) int_0^1 ds s^(e_u - 1) (1/2 pi i) oint dv'/v'
              (1 - 1/v')^(-a_1) (1 - X v')^(-b_1) sum_i P_0(i) N(i) w^i,

with X = v (1-t)(1-s) and w = v v' t s / ((v' - 1)(1 - X v')).  The
integrand is single valued when a_1 is a nonpositive integer, which is why
only the polynomial family is handled.  The operator acting on the level-0
hypergeometric function becomes the weight N(i) on its terms.
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import nested
from .errors import QuadratureError, SingularConfigurationError
from .heunlocal import HeunSeriesCoeffs, heun_poly_limits
from .hypergeo import pochhammer
from .series3trf import _check_quantized, level_limit

IMAG_TOL = 1e-8


@dataclass(frozen=True)
class QuadratureSpec:
    n_gl: int = 64
    n_contour: int = 256
    contour_radius: float = 0.5

    def __post_init__(self):
        if self.n_gl < 16 or self.n_contour < 64:
            raise ValueError("need n_gl >= 16 and n_contour >= 64")
        if not 0.0 < self.contour_radius < 1.0:
            raise ValueError("contour radius must lie in (0, 1)")


@dataclass(frozen=True)
class WChain:
    """Nested substitution values on levels 1..n; ``v[k-1]`` belongs to level k."""

    i: int
    j: int
    v: Sequence[complex]
    t: Sequence[float]
    u: Sequence[float]
    eta: float


def w_value(c):
    """w_{i,j} = v_i/(v_i - 1) * w_{i+1,j} t_i u_i / (1 - w_{i+1,j} v_i (1-t_i)(1-u_i)); eta when i > j."""
    w = complex(c.eta)
    for k in range(c.j, c.i - 1, -1):
        v, t, u = c.v[k - 1], c.t[k - 1], c.u[k - 1]
        den = (v - 1.0) * (1.0 - w * v * (1.0 - t) * (1.0 - u))
        if den == 0:
            raise SingularConfigurationError(f"vanishing denominator at level {k}")
        w = v * w * t * u / den
    return w


@dataclass(frozen=True)
class FirstOrderBlock:
    """Data of a one-A-step block: two levels, the A-factor numerator, the variables."""

    level0: nested.Level
    level1: nested.Level
    numerator: Callable
    u: float
    v: float
    limits: tuple

    @property
    def shifts(self):
        """(e_t, e_u): the A-factor denominator shifts, i.e. level-1 lower parameters minus one."""
        return self.level1.c - 1.0, self.level1.d - 1.0

    def series(self):
        e_t, e_u = self.shifts
        lv0, lv1 = self.level0, self.level1
        return nested.NestedSeries(
            lambda k: lv0 if k == 0 else lv1,
            lambda k, i: self.numerator(i) / ((i + e_t) * (i + e_u)))


def first_order_series(block):
    """Exact finite double sum of the block."""
    n_inner = max(max(block.limits), 0)
    return nested.blocks(block.series(), block.u, block.v, 1, n_inner, list(block.limits))[1]


def _endpoint_rule(e, n):
    """Nodes t and weights for int_0^1 t^(e-1) f(t) dt, singularity removed by t = s^(1/e)."""
    s, w = np.polynomial.legendre.leggauss(n)
    s, w = 0.5 * (s + 1.0), 0.5 * w
    if e < 1.0:
        return s ** (1.0 / e), w / e
    return s, w * s ** (e - 1.0)


def level0_weights(block):
    """Coefficients P_0(i) N(i) of the weighted level-0 series (terminating)."""
    lv, m = block.level0, block.limits[0]
    i = np.arange(m + 1)
    head = np.array([pochhammer(lv.a, k) * pochhammer(lv.b, k)
                     / (pochhammer(lv.c, k) * pochhammer(lv.d, k)) for k in i])
    return head * block.numerator(i.astype(float))


def first_order_integral(block, spec):
    """Triple quadrature of the block: Gauss-Legendre in t and s, trapezoid on |v'| = r."""
    if block.limits[0] < 0 or block.limits[1] < 0:
        return 0.0
    if abs(block.v) * spec.contour_radius >= 0.9:
        raise QuadratureError("contour radius too large for the B-variable")
    e_t, e_u = block.shifts
    t, wt = _endpoint_rule(e_t, spec.n_gl)
    s, ws = _endpoint_rule(e_u, spec.n_gl)
    theta = 2.0 * np.pi * np.arange(spec.n_contour) / spec.n_contour
    vc = spec.contour_radius * np.exp(1j * theta)

    T, S, V = np.meshgrid(t, s, vc, indexing="ij")
    X = block.v * (1.0 - T) * (1.0 - S)
    one_minus = 1.0 - X * V
    w = block.v * V * T * S / ((V - 1.0) * one_minus)
    coeffs = level0_weights(block)
    inner = np.polynomial.polynomial.polyval(w, coeffs)
    kernel = (1.0 - 1.0 / V) ** (-block.level1.a) * one_minus ** (-block.level1.b)
    contour = (kernel * inner).mean(axis=2)
    total = np.einsum("i,j,ij->", wt, ws, contour) * block.u
    if abs(total.imag) > IMAG_TOL:
        raise QuadratureError(f"imaginary residue {total.imag:.3g} exceeds {IMAG_TOL}")
    return float(total.real)


def _lame_block(p, q, xi):
    alpha = _check_quantized(p, q)
    lam = q.lam
    limits = tuple(level_limit(alpha, k, lam, q.branch) for k in (0, 1))

    def level(k):
        s = (k + lam) / 2.0
        return nested.Level(-limits[k], limits[k] + k + lam + 0.25, 1.0 + s, 0.75 + s)

    b = p.rho ** -2

    def numerator(i):
        s = i + lam / 2.0
        return -(1.0 + b) * s * s + p.h * b / 16.0

    r2 = p.rho ** 2
    return FirstOrderBlock(level(0), level(1), numerator, -r2 * xi, -r2 * xi * xi, limits)


def y1_series_reference(p, q, xi):
    """One-A-step block of the polynomial family, each level with its own integer cap.

    Level k uses the exponent 2(2 abar_k + k + lam) (or its minus-branch
    partner), abar_k the floor-rule cap of that level.
    """
    return first_order_series(_lame_block(p, q, xi))


def y1_integral(p, q, xi, spec=QuadratureSpec()):
    return first_order_integral(_lame_block(p, q, xi), spec)


def _heun_block(hp, j, alpha_j, x):
    from .heunlocal import heun_alpha_quantized
    from .errors import QuantizationError

    target = heun_alpha_quantized(j, alpha_j)
    if abs(hp.alpha - target) > 1e-12 * max(1.0, abs(target)):
        raise QuantizationError(f"alpha={hp.alpha} is not -2*{alpha_j}-{j}", level=j)
    limits = tuple(heun_poly_limits(hp.alpha, 1))
    base = HeunSeriesCoeffs.from_params(hp)
    a = hp.a

    def level(k):
        s = k / 2.0
        return nested.Level(-limits[k], base.b0 + s, 1.0 + s, base.d0 + s)

    omega0 = (-2.0 * limits[0] + hp.beta - hp.delta + a * (hp.delta + hp.gamma - 1.0)) / (2.0 * (1.0 + a))

    def numerator(i):
        return i * (i + omega0) + 0.5 * base.Q

    eta, z = base.variables(x)
    return FirstOrderBlock(level(0), level(1), numerator, eta, z, limits)


def heun_y1_series_reference(hp, j, alpha_j, x):
    return first_order_series(_heun_block(hp, j, alpha_j, x))


def heun_y1_integral(hp, j, alpha_j, x, spec=QuadratureSpec()):
    return first_order_integral(_heun_block(hp, j, alpha_j, x), spec)
