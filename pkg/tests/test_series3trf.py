import math
import warnings

import numpy as np
import pytest

from lame3trf import nested
from lame3trf.errors import BranchError, DivergenceError, QuantizationError
from lame3trf.frobenius import LameParams, eval_series, frobenius_coefficients, recurrence_coeffs
from lame3trf.hypergeo import HypergeometricArgs, gauss_2f1
from lame3trf.series3trf import (Branch, Kind, QuantizedAlphaWarning, SolutionSpec,
                                 Type1Quantization, expand_to_xi_coeffs, lame_series, level_limit,
                                 level_limits, lf_infinite, lf_poly_type1, ls_infinite,
                                 on_lattice, quantized_alpha, y_blocks)

GENERIC = LameParams(0.5, 1.3, 2.7)
DEEP = SolutionSpec(n_mu=30, n_inner=30)


def oracle(p, lam, xi, N=200):
    return eval_series(frobenius_coefficients(p, lam, N), xi)


def random_params(rng, n):
    out = []
    while len(out) < n:
        p = LameParams(rng.uniform(0.1, 0.9), rng.uniform(-5, 5), rng.uniform(-3, 3))
        if not (on_lattice(p.alpha, 0.0) or on_lattice(p.alpha, 0.5)):
            out.append(p)
    return out


def test_quantized_alpha_headers():
    assert quantized_alpha(Type1Quantization(0, 0)) == 0.0
    assert quantized_alpha(Type1Quantization(0, 0, Branch.MINUS)) == -1.0
    assert quantized_alpha(Type1Quantization(1, 2, Branch.PLUS, 0.5)) == 11.0


def test_quantization_fields_validated():
    with pytest.raises(ValueError):
        Type1Quantization(-1, 0)
    with pytest.raises(ValueError):
        Type1Quantization(0, 0, lam=0.25)
    with pytest.raises(ValueError):
        SolutionSpec(n_mu=-1)


@pytest.mark.parametrize("branch", list(Branch))
@pytest.mark.parametrize("lam", [0.0, 0.5])
def test_floor_rule_reproduces_header_index(branch, lam):
    for j in range(4):
        for aj in range(4):
            q = Type1Quantization(j, aj, branch, lam)
            assert level_limits(q, j + 2)[j] == aj


def test_first_kind_origin_and_trivial_equation():
    assert lf_infinite(GENERIC, SolutionSpec(), 0.0) == 1.0
    p = LameParams(0.7, 0.0, 0.3)  # alpha kept off-lattice; h = 0 alone is not trivial
    assert lf_infinite(p, DEEP, 0.2) == pytest.approx(oracle(p, 0.0, 0.2), abs=1e-12)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuantizedAlphaWarning)
        for xi in np.linspace(0, 0.5, 6):
            assert lf_infinite(LameParams(0.7, 0.0, 0.0), SolutionSpec(), xi) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("xi", [0.1, 0.2, 0.3])
def test_first_kind_matches_oracle(xi):
    assert lf_infinite(GENERIC, DEEP, xi) == pytest.approx(oracle(GENERIC, 0.0, xi), rel=1e-12)


@pytest.mark.parametrize("xi", [0.1, 0.2, 0.3])
def test_second_kind_matches_oracle(xi):
    assert ls_infinite(GENERIC, DEEP, xi) == pytest.approx(oracle(GENERIC, 0.5, xi), rel=1e-12)


def test_default_truncation_at_small_xi():
    for xi in (0.05, 0.1):
        assert lf_infinite(GENERIC, SolutionSpec(), xi) == pytest.approx(oracle(GENERIC, 0.0, xi), rel=1e-10)
        assert ls_infinite(GENERIC, SolutionSpec(), xi) == pytest.approx(oracle(GENERIC, 0.5, xi), rel=1e-10)


def test_second_kind_leading_behaviour():
    assert ls_infinite(GENERIC, SolutionSpec(), 0.0) == 0.0
    assert ls_infinite(GENERIC, SolutionSpec(), 1e-8) / math.sqrt(1e-8) == pytest.approx(1.0, abs=1e-7)
    with pytest.raises(BranchError):
        ls_infinite(GENERIC, SolutionSpec(), -0.1)


def test_lattice_alpha_warns():
    p = LameParams(0.5, 1.0, 4.0)
    with pytest.warns(QuantizedAlphaWarning):
        lf_infinite(p, SolutionSpec(), 0.1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        lf_infinite(GENERIC, SolutionSpec(), 0.1)


def test_eta_outside_disc_diverges():
    with pytest.raises(DivergenceError):
        lf_infinite(LameParams(0.9, 1.0, 0.3), SolutionSpec(), 1.2)


POLY_CASES = [
    Type1Quantization(0, 0),
    Type1Quantization(0, 1),
    Type1Quantization(2, 1),
    Type1Quantization(1, 2, Branch.MINUS),
    Type1Quantization(1, 2, Branch.PLUS, 0.5),
    Type1Quantization(2, 1, Branch.MINUS, 0.5),
]


@pytest.mark.parametrize("q", POLY_CASES)
def test_polynomial_family_matches_oracle(q):
    p = LameParams(0.6, 1.1, quantized_alpha(q))
    for xi in (0.1, 0.3):
        assert lf_poly_type1(p, q, 30, xi) == pytest.approx(oracle(p, q.lam, xi), rel=1e-12)


def test_polynomial_origin_values():
    for q in POLY_CASES:
        p = LameParams(0.6, 1.1, quantized_alpha(q))
        assert lf_poly_type1(p, q, 8, 0.0) == (1.0 if q.lam == 0 else 0.0)


def test_polynomial_alpha_zero_is_trivial_at_leading_block():
    q = Type1Quantization(0, 0)
    p = LameParams(0.5, 2.0, 0.0)
    spec = SolutionSpec(n_mu=0, n_inner=12)
    limits = level_limits(q, 0)
    assert y_blocks(p, spec, 0.3, limits)[0] == 1.0
    assert gauss_2f1(HypergeometricArgs(0, 0.25, 0.75, -0.3)) == 1.0


def test_polynomial_leading_block_two_terms():
    q = Type1Quantization(0, 1)
    p = LameParams(0.5, 2.0, quantized_alpha(q))
    xi = 0.4
    eta = -p.rho ** 2 * xi * xi
    spec = SolutionSpec(n_mu=0, n_inner=12)
    y0 = y_blocks(p, spec, xi, level_limits(q, 0))[0]
    assert y0 == pytest.approx(1 - 5 / 3 * eta, abs=1e-15)


@pytest.mark.parametrize("aj", range(5))
def test_leading_chain_term_count(aj):
    q = Type1Quantization(0, aj)
    p = LameParams(0.5, 1.0, quantized_alpha(q))
    S = nested.level_tables(lame_series(p, 0.0), 0.0, 0.37, 0, 20)
    # running values S[0, i] are the individual y_0 terms when u = 0
    assert np.count_nonzero(S[0]) == aj + 1


def test_wrong_alpha_rejected_with_level():
    q = Type1Quantization(3, 1)
    with pytest.raises(QuantizationError) as err:
        lf_poly_type1(LameParams(0.5, 1.0, 7.0), q, 8, 0.1)
    assert err.value.level == 3


def test_expanded_coefficients_low_orders():
    for lam in (0.0, 0.5):
        d = expand_to_xi_coeffs(GENERIC, SolutionSpec(kind=Kind(lam)), 12).coeffs
        assert d[0] == 1.0
    d = expand_to_xi_coeffs(GENERIC, SolutionSpec(), 3).coeffs
    assert d[1] == pytest.approx(-GENERIC.h / 2, abs=1e-15)
    with pytest.raises(ValueError):
        expand_to_xi_coeffs(GENERIC, SolutionSpec(n_mu=2, n_inner=2), 7)


@pytest.mark.parametrize("lam", [0.0, 0.5])
def test_coefficient_equivalence_full_depth(lam):
    # n_mu must reach the order: the pure-A chain contributes mu^m to xi^m
    rng = np.random.default_rng(2024)
    for p in random_params(rng, 20):
        d = expand_to_xi_coeffs(p, SolutionSpec(kind=Kind(lam), n_mu=12, n_inner=12), 12).coeffs
        c = frobenius_coefficients(p, lam, 12).coeffs
        scale = np.maximum(np.abs(c), 1e-300)
        assert np.max(np.abs(d - c) / scale) <= 1e-10


@pytest.mark.parametrize("lam", [0.0, 0.5])
def test_coefficients_below_n_mu_agree_at_defaults(lam):
    rng = np.random.default_rng(99)
    for p in random_params(rng, 10):
        d = expand_to_xi_coeffs(p, SolutionSpec(kind=Kind(lam)), 8).coeffs
        c = frobenius_coefficients(p, lam, 8).coeffs
        np.testing.assert_allclose(d, c, rtol=1e-10)


@pytest.mark.parametrize("lam", [0.0, 0.5])
def test_afactor_is_even_step_of_recurrence(lam):
    rng = np.random.default_rng(17)
    for _ in range(10):
        p = LameParams(rng.uniform(0.1, 0.9), rng.uniform(-5, 5), 1.7)
        s = lame_series(p, lam)
        for i in range(11):
            A, _ = recurrence_coeffs(p, lam, 2 * i)
            F = s.afactor(0, np.array([i]))[0]
            assert F * -p.rho ** 2 == pytest.approx(A, rel=1e-13, abs=1e-13)


def test_truncation_monotone():
    xi = 0.2
    for n in range(2, 10):
        lo = lf_infinite(GENERIC, SolutionSpec(n_mu=n, n_inner=20), xi)
        hi = lf_infinite(GENERIC, SolutionSpec(n_mu=n + 2, n_inner=20), xi)
        last = abs(y_blocks(GENERIC, SolutionSpec(n_mu=n, n_inner=20), xi)[-1])
        assert abs(hi - lo) < last


def test_floor_rule_negative_levels():
    assert level_limit(0.0, 1, 0.0, Branch.PLUS) == -1
    assert level_limit(-1.0, 1, 0.0, Branch.MINUS) == -1
    assert level_limit(8.0, 3, 0.0, Branch.PLUS) == 0
