import math

import numpy as np
import pytest

from lame3trf.errors import BranchError, DomainError, QuantizationError
from lame3trf.frobenius import LameParams, eval_series, frobenius_coefficients
from lame3trf.heunlocal import (DESCRIPTORS, HeunParams, HeunSeriesCoeffs, Regime, VARIABLES,
                                chain_terminates, check_coefficients, descriptor,
                                descriptor_table_csv, heun_asymptotic, heun_domain,
                                heun_hf_infinite, heun_hf_poly1, local_solution,
                                printed_mismatches, truncation_for)
from lame3trf.series3trf import SolutionSpec, lf_infinite

GENERIC = LameParams(0.5, 1.3, 2.7)

# closed forms that disagree with the Heun map as printed, and which entry
PRINTED_ERRATA = {3: ["coeffs"], 4: ["hl", "coeffs"], 5: ["prefactor"], 9: ["hl"]}

# Lame alpha offsets c in alpha = -2(2 alpha_j + j + c) for the polynomial descriptors
POLY_OFFSETS = {1: 1.0, 2: 1.5, 3: 0.5, 4: 1.0}


def test_lame_as_heun():
    hp = HeunParams.from_lame(GENERIC)
    assert hp.a == pytest.approx(4.0)
    assert hp.q == pytest.approx(-1.3)
    assert hp.gamma == hp.delta == 0.5
    assert hp.epsilon == pytest.approx(0.5)
    c = HeunSeriesCoeffs.from_params(hp)
    assert c.Q == pytest.approx(hp.q / (2 * (1 + hp.a)))


@pytest.mark.parametrize("a", [0.0, 1.0])
def test_forbidden_singularity(a):
    with pytest.raises(DomainError):
        HeunParams(a, 0.1, 1.0, 1.0, 0.5, 0.5)


def test_heun_series_origin_and_trivial_case():
    hp = HeunParams.from_lame(GENERIC)
    assert heun_hf_infinite(hp, 8, 12, 0.0) == 1.0
    trivial = HeunParams(3.0, 0.0, 0.0, 0.7, 0.4, 0.6)
    assert heun_hf_infinite(trivial, 0, 12, 0.3) == 1.0


def test_heun_series_is_lame_series():
    hp = HeunParams.from_lame(GENERIC)
    for xi in (0.1, 0.2):
        assert heun_hf_infinite(hp, 40, 40, xi) == pytest.approx(
            lf_infinite(GENERIC, SolutionSpec(n_mu=40, n_inner=40), xi), rel=1e-10)


def test_heun_outside_region():
    with pytest.raises(DomainError):
        heun_hf_infinite(HeunParams.from_lame(GENERIC), 8, 12, 1.2)


def test_poly_branch_origin_and_errors():
    hp = HeunParams(4.0, 0.3, 0.0, 0.7, 0.5, 0.5)
    assert heun_hf_poly1(hp, 0, 0, 8, 0.0) == 1.0
    assert heun_hf_poly1(hp, 0, 0, 0, 0.3) == 1.0
    with pytest.raises(QuantizationError):
        heun_hf_poly1(HeunParams(4.0, 0.3, -1.5, 0.7, 0.5, 0.5), 1, 0, 8, 0.2)


@pytest.mark.parametrize("xi", [0.15, 0.3])
def test_poly_branch_through_first_descriptor(xi):
    p = LameParams(0.5, 0.7, -2.0)
    hp = descriptor(1).param_map(p)
    val = heun_hf_poly1(hp, 0, 0, 40, xi) * math.sqrt(1 - xi)
    assert val == pytest.approx(eval_series(frobenius_coefficients(p, 0.0, 300), xi), abs=1e-9)


@pytest.mark.parametrize("d", DESCRIPTORS, ids=lambda d: f"d{d.id}")
def test_local_solutions_solve_the_equation(d, admissible, residual):
    for p, xi in admissible(d, 3, seed=100 + d.id):
        f = lambda x: local_solution(d, p, x)
        assert abs(residual(f, p, xi)) <= 1e-5


def test_first_descriptor_is_the_series_about_origin():
    d = descriptor(1)
    for xi in (0.05, 0.15, 0.25):
        assert local_solution(d, GENERIC, xi) == pytest.approx(
            lf_infinite(GENERIC, SolutionSpec(n_mu=40, n_inner=40), xi), rel=1e-9)


def test_third_descriptor_at_its_origin():
    assert local_solution(descriptor(3), GENERIC, 1.0) == 1.0


@pytest.mark.parametrize("d", DESCRIPTORS, ids=lambda d: f"d{d.id}")
def test_printed_closed_forms(d):
    rng = np.random.default_rng(d.id)
    for _ in range(3):
        p = LameParams(rng.uniform(0.1, 0.9), rng.uniform(-5, 5), rng.uniform(-3, 3))
        assert printed_mismatches(d, p) == PRINTED_ERRATA.get(d.id, [])
        assert printed_mismatches(d, p, use_corrections=True) == []


def test_every_correction_is_needed():
    for d in DESCRIPTORS:
        assert sorted(d.corrections) == sorted(PRINTED_ERRATA.get(d.id, []))


@pytest.mark.parametrize("d_id", sorted(POLY_OFFSETS))
def test_header_quantization_terminates_chain(d_id):
    d = descriptor(d_id)
    for j in range(4):
        for aj in range(4):
            p = LameParams(0.5, 0.7, -2 * (2 * aj + j + POLY_OFFSETS[d_id]))
            assert chain_terminates(check_coefficients(d, p), j) == aj


def test_asymptotic_values():
    d1, d3 = descriptor(1), descriptor(3)
    assert heun_asymptotic(d1, Regime.GENERIC, GENERIC, 0.0) == 1.0
    assert heun_asymptotic(d1, Regime.ABS_A_LARGE, LameParams(0.1, 1.0, 1.0), 0.5) == pytest.approx(
        1 / (1 - 1.01 * 0.5), abs=1e-12)
    p = LameParams(0.6, 1.0, 1.0)
    b = p.rho ** -2
    for xi in (0.7, 0.8, 0.9):
        s = 1 - xi
        expect = 1 / (1 - (-s * s / (1 - b) + (2 - b) / (1 - b) * s))
        assert heun_asymptotic(d3, Regime.GENERIC, p, xi) == pytest.approx(expect, rel=1e-14)


def test_first_descriptor_generic_limit_is_lame_limit():
    p = LameParams(0.5, 1.0, 1.0)
    for xi in (0.1, 0.3):
        expect = 1 / (1 - (-p.rho ** 2 * xi ** 2 + (1 + p.rho ** 2) * xi))
        assert heun_asymptotic(descriptor(1), Regime.GENERIC, p, xi) == pytest.approx(expect, rel=1e-14)


def test_asymptotic_guards():
    with pytest.raises(DomainError):
        heun_asymptotic(descriptor(5), Regime.ABS_A_LARGE, GENERIC, 10.0)
    with pytest.raises(DomainError):
        heun_asymptotic(descriptor(1), Regime.GENERIC, GENERIC, 1.0)


def test_domains():
    v = heun_domain(descriptor(1), Regime.GENERIC, 0.0, 0.5)
    assert v.inside and v.margin == 1.0
    for rho in (0.2, 0.5, 0.9):
        v = heun_domain(descriptor(1), Regime.GENERIC, 1.0, rho)
        assert not v.inside and v.margin == pytest.approx(0.0, abs=1e-14)
    rho, xi = 0.3, 0.3
    b = rho ** -2
    direct = abs((2 - b) * xi / (xi - b))
    v = heun_domain(descriptor(6), Regime.ABS_A_LARGE, xi, rho)
    assert v.inside == (direct < 1) and v.margin == pytest.approx(1 - direct, abs=1e-14)


def test_ninth_variable_positive_on_unit_interval():
    for rho in (0.2, 0.5, 0.9):
        for xi in np.linspace(0.01, 0.99, 25):
            assert VARIABLES["a(x-1)/(x-a)"](xi, rho ** -2) > 0


def test_branch_error_for_negative_base():
    with pytest.raises(BranchError):
        descriptor(1).prefactor_value(GENERIC, 1.5)


def test_truncation_orders():
    assert truncation_for(0.0, 0.0) == (8, 8)
    n_mu, n_inner = truncation_for(0.5, 0.1)
    assert (0.5 / 0.9) ** n_mu < 1e-15 and n_inner >= n_mu * 0.1 / 0.9
    with pytest.raises(DomainError):
        truncation_for(0.95, 0.1)
    with pytest.raises(DomainError):
        truncation_for(0.9, 0.05)  # converges, but needs more terms than the cap


def test_descriptor_csv():
    text = descriptor_table_csv()
    lines = text.strip().splitlines()
    assert lines[0].startswith("id,hl_form")
    assert len(lines) == 10
