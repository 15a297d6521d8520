"""Heun-function nested series and nine local solutions of the Lame equation.

The Lame equation in xi = sn^2 is the Heun equation

    y'' + (gamma/x + delta/(x-1) + eps/(x-a)) y' + (alpha beta x - q) y / (x(x-1)(x-a)) = 0

with gamma = delta = eps = 1/2, a = rho^-2, alpha_H = (alpha+1)/2,
beta_H = -alpha/2 and q = -h rho^-2 / 4.  The first-kind Heun solution
about x = 0 is a nested sum in eta = (1+a) x / a (A-steps) and z = -x^2 / a
(B-steps).  Each Heun transformation (a prefactor times Hl with mapped
parameters at a mapped argument) then gives another local solution of the
same Lame equation; the table :data:`DESCRIPTORS` holds nine of them.

Convention for the accessory constant: ``HeunSeriesCoeffs.Q`` is stored as
q / (2 (1+a)).  Matching the Heun recurrence term by term shows that the
A-factor numerator carries half of it, i (i + Gamma_0) + Q/2, and that is
what the evaluator uses.
"""

import csv
import enum
import io
import math
from dataclasses import dataclass, field, fields
from typing import Callable

import numpy as np

from . import nested
from .asymptotics import DomainVerdict
from .errors import BranchError, DomainError, QuantizationError
from .hypergeo import nonpositive_integer

COEFF_RTOL = 1e-12


@dataclass(frozen=True)
class HeunParams:
    """Heun parameters; epsilon follows from alpha + beta - gamma - delta + 1."""

    a: float
    q: float
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        if self.a == 0 or self.a == 1:
            raise DomainError("Heun singularity a must differ from 0 and 1")

    @property
    def epsilon(self):
        return self.alpha + self.beta - self.gamma - self.delta + 1.0

    def astuple(self):
        return (self.a, self.q, self.alpha, self.beta, self.gamma, self.delta)

    @classmethod
    def from_lame(cls, p):
        """Heun parameters of the Lame equation in xi = sn^2."""
        b = p.rho ** -2
        return cls(b, -p.h * b / 4.0, (p.alpha + 1.0) / 2.0, -p.alpha / 2.0, 0.5, 0.5)


@dataclass(frozen=True)
class HeunSeriesCoeffs:
    """Everything the nested Heun series needs.

    eta = eta_coef * x and z = z_coef * x^2; level k has upper parameters
    (a0 + k/2, b0 + k/2) and lower parameters (1 + k/2, d0 + k/2); the
    A-factor at level k uses Gamma_k = gamma0 + k/2.
    """

    eta_coef: float
    z_coef: float
    gamma0: float
    Q: float
    a0: float
    b0: float
    d0: float

    @classmethod
    def from_params(cls, hp):
        a = hp.a
        return cls(
            eta_coef=(1.0 + a) / a,
            z_coef=-1.0 / a,
            gamma0=(hp.alpha + hp.beta - hp.delta + a * (hp.delta + hp.gamma - 1.0)) / (2.0 * (1.0 + a)),
            Q=hp.q / (2.0 * (1.0 + a)),
            a0=hp.alpha / 2.0,
            b0=hp.beta / 2.0,
            d0=0.5 + hp.gamma / 2.0,
        )

    def astuple(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    def omega(self, k):
        """Gamma_k, the shift in the level-k A-factor numerator."""
        return self.gamma0 + k / 2.0

    def series(self):
        def level(k):
            s = k / 2.0
            return nested.Level(self.a0 + s, self.b0 + s, 1.0 + s, self.d0 + s)

        def afactor(k, i):
            s = i + k / 2.0
            return (s * (i + self.omega(k)) + 0.5 * self.Q) / ((s + 0.5) * (s + self.d0 - 0.5))

        return nested.NestedSeries(level, afactor)

    def variables(self, x):
        return self.eta_coef * x, self.z_coef * x * x


def _check_heun_domain(c, x):
    eta, z = c.variables(x)
    if abs(z) >= 1.0 or abs(z + eta) >= 1.0:
        raise DomainError(f"x={x} outside the convergence region |z|<1, |z+eta|<1")
    return eta, z


def heun_hf_infinite(hp, n_mu, n_inner, x):
    """First-kind Heun series Hl(a, q; alpha, beta, gamma, delta; x), Hl(0) = 1."""
    c = HeunSeriesCoeffs.from_params(hp)
    eta, z = _check_heun_domain(c, x)
    return nested.evaluate(c.series(), eta, z, n_mu, n_inner)


def heun_alpha_quantized(j, alpha_j):
    return -2.0 * alpha_j - j


def heun_hf_poly1(hp, j, alpha_j, n_mu, x, n_inner=None):
    """Type-1 Heun polynomial branch, alpha = -2 alpha_j - j.

    Terminating eta-chains are summed in full; the others are capped at
    ``n_inner`` (default: a safe multiple of the level-0 length).
    """
    target = heun_alpha_quantized(j, alpha_j)
    if abs(hp.alpha - target) > 1e-12 * max(1.0, abs(target)):
        raise QuantizationError(f"alpha={hp.alpha} is not -2*{alpha_j}-{j}", level=j)
    c = HeunSeriesCoeffs.from_params(hp)
    eta, z = _check_heun_domain(c, x)
    if n_inner is None:
        n_inner = max(12, int(-hp.alpha // 2) + 1) + n_mu
    return nested.evaluate(c.series(), eta, z, n_mu, n_inner)


def heun_poly_limits(alpha, n_mu):
    """Floor-rule eta-caps per level for alpha = -2 alpha_j - j."""
    return [math.floor(-alpha / 2.0 - k / 2.0 + 1e-12) for k in range(n_mu + 1)]


def chain_terminates(c, k):
    """Index where the level-k eta-chain of a coefficient set stops, or None."""
    lv = c.series().level(k)
    ends = [m for m in (nonpositive_integer(lv.a), nonpositive_integer(lv.b)) if m is not None]
    return min(ends) if ends else None


# --------------------------------------------------------------------------
# Transformations.  Each one maps the Heun parameters, the argument and
# supplies the prefactor, all at the level of a generic Heun equation.

def _t1(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams(a, q - (de - 1) * ga * a, al - de + 1, be - de + 1, ga, 2 - de)


def _t2(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams(a, q - (ga + de - 2) * a - (ga - 1) * (al + be - ga - de + 1),
                      al - ga - de + 2, be - ga - de + 2, 2 - ga, 2 - de)


def _t3(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams(1 - a, -q + al * be, al, be, de, ga)


def _t4(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams(1 - a, -q + (de - 1) * ga * a + (al - de + 1) * (be - de + 1),
                      al - de + 1, be - de + 1, 2 - de, ga)


def _t5(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams(1 / a, (q + al * ((al - ga - de + 1) * a - be + de)) / a,
                      al, al - ga + 1, al - be + 1, de)


def _t6(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams(1 - a, -q + ga * be, -al + ga + de, be, ga, de)


def _t7(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams(1 - a, -q + ga * ((de - 1) * a + be - de + 1),
                      -al + ga + 1, be - de + 1, ga, 2 - de)


def _t8(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams((a - 1) / a, (-q + al * (de * a + be - de)) / a,
                      al, al - ga + 1, de, al - be + 1)


def _t9(hp):
    a, q, al, be, ga, de = hp.astuple()
    return HeunParams(a, q - (be - de) * al, al, -be + ga + de, de, ga)


BASES = {
    "x": lambda x, a: x,
    "1-x": lambda x, a: 1.0 - x,
    "1-x/a": lambda x, a: 1.0 - x / a,
    "(x-a)/(1-a)": lambda x, a: (x - a) / (1.0 - a),
}

VARIABLES = {
    "x": lambda x, a: x,
    "1-x": lambda x, a: 1.0 - x,
    "1/x": lambda x, a: 1.0 / x,
    "(1-a)x/(x-a)": lambda x, a: (1.0 - a) * x / (x - a),
    "(x-1)/x": lambda x, a: (x - 1.0) / x,
    "a(x-1)/(x-a)": lambda x, a: a * (x - 1.0) / (x - a),
}


class Regime(enum.Enum):
    GENERIC = "generic"
    A_NEAR_MINUS_ONE = "a~-1"
    ABS_A_LARGE = "|a|>>1"


@dataclass(frozen=True)
class LamePrinted:
    """Closed forms of one local solution written directly in (rho, h, alpha).

    ``hl`` gives (a, q, alpha, beta, gamma, delta) of the transformed Hl,
    ``prefactor`` the exponent of each base, ``coeffs`` the nested-series
    coefficients.  All entries are functions of a :class:`LameParams`.
    """

    hl: Callable
    prefactor: Callable
    coeffs: Callable


@dataclass(frozen=True)
class TransformDescriptor:
    id: int
    hl_form: str
    transform: Callable
    variable: str
    prefactor: tuple
    printed: LamePrinted
    corrections: dict = field(default_factory=dict)
    regimes: tuple = (Regime.GENERIC,)

    def param_map(self, p):
        """Transformed Heun parameters for the Lame parameters p."""
        return self.transform(HeunParams.from_lame(p))

    def argument(self, xi, rho):
        return VARIABLES[self.variable](xi, rho ** -2)

    def prefactor_exponents(self, p):
        """Exponents of the prefactor bases, derived from the Heun map."""
        hp = HeunParams.from_lame(p)
        return tuple(fn(hp) for _, fn in self.prefactor)

    def prefactor_value(self, p, xi):
        a = p.rho ** -2
        out = 1.0
        for (base, _), e in zip(self.prefactor, self.prefactor_exponents(p)):
            v = BASES[base](xi, a)
            if v < 0 and abs(e - round(e)) > 1e-12:
                raise BranchError(f"prefactor base {base} = {v} < 0 with exponent {e}")
            out *= v ** e
        return out

    def effective(self, p):
        """Printed closed forms with the recorded corrections applied.

        Returns a dict with keys ``hl``, ``prefactor`` and ``coeffs``.
        """
        out = {k: getattr(self.printed, k)(p) for k in ("hl", "prefactor", "coeffs")}
        for key, fix in self.corrections.items():
            out[key] = fix.value(p)
        return out


@dataclass(frozen=True)
class Correction:
    """Replacement for a printed closed form that disagrees with the Heun map."""

    value: Callable
    note: str


def _coeffs(eta, z, g0, Q, a0, b0, d0):
    return HeunSeriesCoeffs(eta, z, g0, Q, a0, b0, d0)


def _r2(p):
    return p.rho ** 2


def _b(p):
    return p.rho ** -2


DESCRIPTORS = (
    TransformDescriptor(
        1, "(1-x)^(1-delta) Hl(a, q-(delta-1)gamma a; alpha-delta+1, beta-delta+1, gamma, 2-delta; x)",
        _t1, "x", (("1-x", lambda hp: 1 - hp.delta),),
        LamePrinted(
            hl=lambda p: (_b(p), -(p.h - 1) * _b(p) / 4, p.alpha / 2 + 1, -p.alpha / 2 + 0.5, 0.5, 1.5),
            prefactor=lambda p: (0.5,),
            coeffs=lambda p: _coeffs(1 + _r2(p), -_r2(p), 1 / (2 * (1 + _r2(p))),
                                     (1 - p.h) / (8 * (1 + _r2(p))),
                                     p.alpha / 4 + 0.5, -p.alpha / 4 + 0.25, 0.75)),
        regimes=(Regime.GENERIC, Regime.ABS_A_LARGE),
    ),
    TransformDescriptor(
        2, "x^(1-gamma) (1-x)^(1-delta) Hl(a, q-(gamma+delta-2)a-(gamma-1)(alpha+beta-gamma-delta+1); "
           "alpha-gamma-delta+2, beta-gamma-delta+2, 2-gamma, 2-delta; x)",
        _t2, "x", (("x", lambda hp: 1 - hp.gamma), ("1-x", lambda hp: 1 - hp.delta)),
        LamePrinted(
            hl=lambda p: (_b(p), -((p.h - 4) * _b(p) - 1) / 4, p.alpha / 2 + 1.5, -p.alpha / 2 + 1, 1.5, 1.5),
            prefactor=lambda p: (0.5, 0.5),
            coeffs=lambda p: _coeffs(1 + _r2(p), -_r2(p), (2 + _r2(p)) / (2 * (1 + _r2(p))),
                                     (4 + _r2(p) - p.h) / (8 * (1 + _r2(p))),
                                     p.alpha / 4 + 0.75, -p.alpha / 4 + 0.5, 1.25)),
        regimes=(Regime.GENERIC, Regime.ABS_A_LARGE),
    ),
    TransformDescriptor(
        3, "Hl(1-a, -q+alpha beta; alpha, beta, delta, gamma; 1-x)",
        _t3, "1-x", (),
        LamePrinted(
            hl=lambda p: (1 - _b(p), (p.h * _b(p) - p.alpha * (p.alpha + 1)) / 4,
                          (p.alpha + 1) / 2, -p.alpha / 2, 0.5, 0.5),
            prefactor=lambda p: (),
            coeffs=lambda p: _coeffs((2 - _b(p)) / (1 - _b(p)), -1 / (1 - _b(p)), 0.0,
                                     (p.h * _b(p) - p.alpha * (p.alpha + 1)) / (8 * (2 - _r2(p))),
                                     p.alpha / 4 + 0.25, -p.alpha / 4, 0.75)),
        corrections={"coeffs": Correction(
            lambda p: _coeffs((2 - _b(p)) / (1 - _b(p)), -1 / (1 - _b(p)), 0.0,
                              (p.h * _b(p) - p.alpha * (p.alpha + 1)) / (8 * (2 - _b(p))),
                              p.alpha / 4 + 0.25, -p.alpha / 4, 0.75),
            "Q denominator is 8(2 - rho^-2), not 8(2 - rho^2)")},
        regimes=(Regime.GENERIC, Regime.A_NEAR_MINUS_ONE, Regime.ABS_A_LARGE),
    ),
    TransformDescriptor(
        4, "(1-x)^(1-delta) Hl(1-a, -q+(delta-1)gamma a+(alpha-delta+1)(beta-delta+1); "
           "alpha-delta+1, beta-delta+1, 2-delta, gamma; 1-x)",
        _t4, "1-x", (("1-x", lambda hp: 1 - hp.delta),),
        LamePrinted(
            hl=lambda p: (1 - _b(p), -((1 + p.h) * _b(p) + (p.alpha - 1) * (p.alpha + 2)) / 4,
                          p.alpha / 2 + 1, -p.alpha / 2 + 0.5, 1.5, 0.5),
            prefactor=lambda p: (0.5,),
            coeffs=lambda p: _coeffs((2 - _b(p)) / (1 - _b(p)), -1 / (1 - _b(p)), 0.5,
                                     -((1 + p.h) * _b(p) + (p.alpha - 1) * (p.alpha + 2)) / (8 * (2 - _b(p))),
                                     p.alpha / 4 + 0.5, -p.alpha / 4 + 0.25, 1.25)),
        corrections={
            "hl": Correction(
                lambda p: (1 - _b(p), -((1 - p.h) * _b(p) + (p.alpha - 1) * (p.alpha + 2)) / 4,
                           p.alpha / 2 + 1, -p.alpha / 2 + 0.5, 1.5, 0.5),
                "accessory parameter carries (1 - h) rho^-2; the printed (1 + h) fails the ODE"),
            "coeffs": Correction(
                lambda p: _coeffs((2 - _b(p)) / (1 - _b(p)), -1 / (1 - _b(p)), 0.5,
                                  -((1 - p.h) * _b(p) + (p.alpha - 1) * (p.alpha + 2)) / (8 * (2 - _b(p))),
                                  p.alpha / 4 + 0.5, -p.alpha / 4 + 0.25, 1.25),
                "Q inherits the (1 - h) sign of the accessory parameter"),
        },
        regimes=(Regime.GENERIC, Regime.A_NEAR_MINUS_ONE, Regime.ABS_A_LARGE),
    ),
    TransformDescriptor(
        5, "x^(-alpha) Hl(1/a, (q+alpha((alpha-gamma-delta+1)a-beta+delta))/a; "
           "alpha, alpha-gamma+1, alpha-beta+1, delta; 1/x)",
        _t5, "1/x", (("x", lambda hp: -hp.alpha),),
        LamePrinted(
            hl=lambda p: (_r2(p), -(p.h - (1 + _r2(p)) * (p.alpha + 1) ** 2) / 4,
                          (p.alpha + 1) / 2, (p.alpha + 2) / 2, p.alpha + 1.5, 0.5),
            prefactor=lambda p: ((p.alpha + 1) / 2,),
            coeffs=lambda p: _coeffs(1 + _b(p), -_b(p), p.alpha / 2 + 0.5,
                                     -(p.h / (1 + _r2(p)) - (p.alpha + 1) ** 2) / 8,
                                     p.alpha / 4 + 0.25, p.alpha / 4 + 0.5, p.alpha / 2 + 1.25)),
        corrections={"prefactor": Correction(
            lambda p: (-(p.alpha + 1) / 2,),
            "prefactor is xi^(-(alpha+1)/2); the printed exponent has the wrong sign")},
    ),
    TransformDescriptor(
        6, "(1-x/a)^(-beta) Hl(1-a, -q+gamma beta; -alpha+gamma+delta, beta, gamma, delta; (1-a)x/(x-a))",
        _t6, "(1-a)x/(x-a)", (("1-x/a", lambda hp: -hp.beta),),
        LamePrinted(
            hl=lambda p: (1 - _b(p), (p.h * _b(p) - p.alpha) / 4, -p.alpha / 2 + 0.5, -p.alpha / 2, 0.5, 0.5),
            prefactor=lambda p: (p.alpha / 2,),
            coeffs=lambda p: _coeffs((2 - _b(p)) / (1 - _b(p)), -1 / (1 - _b(p)),
                                     -p.alpha / (2 * (2 - _b(p))),
                                     (p.h * _b(p) - p.alpha) / (8 * (2 - _b(p))),
                                     -p.alpha / 4 + 0.25, -p.alpha / 4, 0.75)),
        regimes=(Regime.GENERIC, Regime.A_NEAR_MINUS_ONE, Regime.ABS_A_LARGE),
    ),
    TransformDescriptor(
        7, "(1-x)^(1-delta) (1-x/a)^(-beta+delta-1) Hl(1-a, -q+gamma((delta-1)a+beta-delta+1); "
           "-alpha+gamma+1, beta-delta+1, gamma, 2-delta; (1-a)x/(x-a))",
        _t7, "(1-a)x/(x-a)",
        (("1-x", lambda hp: 1 - hp.delta), ("1-x/a", lambda hp: -hp.beta + hp.delta - 1)),
        LamePrinted(
            hl=lambda p: (1 - _b(p), ((p.h - 1) * _b(p) + 1 - p.alpha) / 4,
                          -p.alpha / 2 + 1, -p.alpha / 2 + 0.5, 0.5, 1.5),
            prefactor=lambda p: (0.5, (p.alpha - 1) / 2),
            coeffs=lambda p: _coeffs((2 - _b(p)) / (1 - _b(p)), -1 / (1 - _b(p)),
                                     -(p.alpha - 1 + _b(p)) / (2 * (2 - _b(p))),
                                     ((p.h - 1) * _b(p) + 1 - p.alpha) / (8 * (2 - _b(p))),
                                     -p.alpha / 4 + 0.5, -p.alpha / 4 + 0.25, 0.75)),
        regimes=(Regime.GENERIC, Regime.A_NEAR_MINUS_ONE, Regime.ABS_A_LARGE),
    ),
    TransformDescriptor(
        8, "x^(-alpha) Hl((a-1)/a, (-q+alpha(delta a+beta-delta))/a; alpha, alpha-gamma+1, delta, alpha-beta+1; (x-1)/x)",
        _t8, "(x-1)/x", (("x", lambda hp: -hp.alpha),),
        LamePrinted(
            hl=lambda p: (1 - _r2(p), (p.h + (p.alpha + 1) * (1 - (p.alpha + 1) * _r2(p))) / 4,
                          (p.alpha + 1) / 2, (p.alpha + 2) / 2, 0.5, p.alpha + 1.5),
            prefactor=lambda p: (-(p.alpha + 1) / 2,),
            coeffs=lambda p: _coeffs((2 - _r2(p)) / (1 - _r2(p)), -1 / (1 - _r2(p)),
                                     (1 - _r2(p)) * (p.alpha + 1) / (2 * (2 - _r2(p))),
                                     (p.h + (p.alpha + 1) * (1 - (p.alpha + 1) * _r2(p))) / (8 * (2 - _r2(p))),
                                     p.alpha / 4 + 0.25, p.alpha / 4 + 0.5, 0.75)),
    ),
    TransformDescriptor(
        9, "((x-a)/(1-a))^(-alpha) Hl(a, q-(beta-delta)alpha; alpha, -beta+gamma+delta, delta, gamma; a(x-1)/(x-a))",
        _t9, "a(x-1)/(x-a)", (("(x-a)/(1-a)", lambda hp: -hp.alpha),),
        LamePrinted(
            hl=lambda p: (_b(p), -(p.h * _b(p) - (p.alpha + 1) ** 2) / 4,
                          (p.alpha + 1) / 2, -(p.alpha - 2) / 2, 0.5, 0.5),
            prefactor=lambda p: (-(p.alpha + 1) / 2,),
            coeffs=lambda p: _coeffs(1 + _r2(p), -_r2(p), (p.alpha + 1) / (2 * (1 + _b(p))),
                                     (-p.h * _b(p) + (p.alpha + 1) ** 2) / (8 * (1 + _b(p))),
                                     p.alpha / 4 + 0.25, p.alpha / 4 + 0.5, 0.75)),
        corrections={"hl": Correction(
            lambda p: (_b(p), -(p.h * _b(p) - (p.alpha + 1) ** 2) / 4,
                       (p.alpha + 1) / 2, (p.alpha + 2) / 2, 0.5, 0.5),
            "second exponent of Hl is (alpha+2)/2; the printed -(alpha-2)/2 disagrees "
            "with its own Gamma_0 and Pochhammer parameters")},
        regimes=(Regime.GENERIC, Regime.ABS_A_LARGE),
    ),
)


def descriptor(d_id):
    return DESCRIPTORS[d_id - 1]


def derived_forms(d, p):
    """Closed forms obtained by pushing the Lame parameters through the Heun map."""
    hp = d.param_map(p)
    return {"hl": hp.astuple(), "prefactor": d.prefactor_exponents(p),
            "coeffs": HeunSeriesCoeffs.from_params(hp)}


def _as_tuple(v):
    return v.astuple() if isinstance(v, HeunSeriesCoeffs) else tuple(v)


def printed_mismatches(d, p, rtol=COEFF_RTOL, use_corrections=False):
    """Keys whose printed (or corrected) closed forms disagree with the Heun map."""
    got = d.effective(p) if use_corrections else {
        k: getattr(d.printed, k)(p) for k in ("hl", "prefactor", "coeffs")}
    want = derived_forms(d, p)
    bad = []
    for key in ("hl", "prefactor", "coeffs"):
        g, w = np.array(_as_tuple(got[key])), np.array(_as_tuple(want[key]))
        if g.shape != w.shape or not np.allclose(g, w, rtol=rtol, atol=rtol):
            bad.append(key)
    return bad


def check_coefficients(d, p):
    """Return the corrected closed-form coefficients after asserting they match the map."""
    bad = printed_mismatches(d, p, use_corrections=True)
    if bad:
        raise AssertionError(f"descriptor {d.id}: closed forms {bad} disagree with the Heun map")
    return d.effective(p)["coeffs"]


def truncation_for(eta, z, tol=1e-15, cap=600):
    """Outer and inner truncation orders reaching ``tol`` for given eta and z.

    Raises DomainError rather than return orders above ``cap``.

    The outer blocks decay like (|eta| / (1 - |z|))^n; at outer order n the
    inner index is spread around n |z| / (1 - |z|).
    """
    az = abs(z)
    ratio = abs(eta) / (1.0 - az)
    if ratio >= 1.0:
        raise DomainError(f"block ratio |eta|/(1-|z|) = {ratio:.3g} >= 1: the outer sum diverges")
    n_mu = 8 if ratio < 1e-3 else int(math.ceil(math.log(tol) / math.log(ratio))) + 4
    tail = 8 if az < 1e-3 else int(math.ceil(math.log(tol) / math.log(az))) + 4
    n_inner = int(math.ceil(n_mu * az / (1.0 - az))) + tail
    if max(n_mu, n_inner) > cap:
        raise DomainError(f"block ratio {ratio:.3g} needs {max(n_mu, n_inner)} terms (cap {cap}); "
                          "too close to the edge of the region")
    return n_mu, n_inner


def local_solution(d, p, xi, n_mu=None, n_inner=None):
    """Value at xi of the local solution described by ``d``.

    The Hl factor is the nested Heun series built from the descriptor's
    closed-form coefficients (checked against the generic Heun map first).
    Truncation orders default to ones reaching double precision.
    """
    c = check_coefficients(d, p)
    x = d.argument(xi, p.rho)
    verdict = heun_domain(d, Regime.GENERIC, xi, p.rho)
    if not verdict.inside:
        raise DomainError(f"descriptor {d.id}: xi={xi} outside |z+eta|<1 (margin {verdict.margin:.3g})")
    eta, z = c.variables(x)
    if abs(z) >= 1.0:
        raise DomainError(f"descriptor {d.id}: |z|={abs(z):.3g} >= 1")
    auto_mu, auto_inner = truncation_for(eta, z)
    n_mu = auto_mu if n_mu is None else n_mu
    n_inner = auto_inner if n_inner is None else n_inner
    return d.prefactor_value(p, xi) * nested.evaluate(c.series(), eta, z, n_mu, n_inner)


def _regime_expr(d, regime, xi, rho):
    hp = d.transform(HeunParams(rho ** -2, 0.0, 1.0, 0.0, 0.5, 0.5))
    a = hp.a
    x = d.argument(xi, rho)
    eta, z = (1.0 + a) / a * x, -x * x / a
    if regime is Regime.GENERIC:
        return z + eta, (eta, z, a, x)
    if regime is Regime.A_NEAR_MINUS_ONE:
        return z, (eta, z, a, x)
    return eta, (eta, z, a, x)


def heun_domain(d, regime, xi, rho):
    """Convergence verdict of a regime for descriptor d, margin = 1 - |expression|."""
    expr, _ = _regime_expr(d, regime, xi, rho)
    margin = 1.0 - abs(expr)
    return DomainVerdict(margin > 0, margin)


def heun_asymptotic(d, regime, p, xi):
    """Closed-form large-order limit of the Hl factor of descriptor d.

    Generic: 1/(1 - (z + eta)); a near -1: (1 + x)/(1 + x^2/a);
    |a| large: 1/(1 - eta).  All in the descriptor's transformed (a, x).
    """
    if regime not in d.regimes:
        raise DomainError(f"descriptor {d.id} has no {regime.value} approximation")
    expr, (eta, z, a, x) = _regime_expr(d, regime, xi, p.rho)
    if abs(expr) >= 1.0:
        raise DomainError(f"descriptor {d.id}: xi={xi} outside the {regime.value} region")
    if regime is Regime.GENERIC:
        return 1.0 / (1.0 - (z + eta))
    if regime is Regime.A_NEAR_MINUS_ONE:
        return (1.0 + x) / (1.0 + x * x / a)
    return 1.0 / (1.0 - eta)


REGIME_PREDICATES = {
    Regime.GENERIC: "|z+eta|<1",
    Regime.A_NEAR_MINUS_ONE: "|z|<1",
    Regime.ABS_A_LARGE: "|eta|<1",
}


def descriptor_rows():
    """One plain-text row per descriptor, for tabulation."""
    for d in DESCRIPTORS:
        yield {
            "id": d.id,
            "hl_form": d.hl_form,
            "prefactor": " * ".join(f"({b})^e" for b, _ in d.prefactor) or "1",
            "variable": d.variable,
            "domains": "; ".join(f"{r.value}: {REGIME_PREDICATES[r]}" for r in d.regimes),
            "corrections": "; ".join(f"{k}: {c.note}" for k, c in d.corrections.items()),
        }


def descriptor_table_csv():
    buf = io.StringIO()
    rows = list(descriptor_rows())
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
