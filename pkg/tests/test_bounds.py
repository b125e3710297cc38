"""Entropy, sparsification coefficients, and exponent arithmetic."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sat2ct.bounds import (
    DEFAULT_BUDGET_BITS,
    DEFAULT_THETA1,
    DEFAULT_THETA2,
    SIM_EXPONENT_PER_T,
    SOLVER_EXPONENT_PER_LENGTH,
    T_GATES_PER_LENGTH,
    binary_entropy,
    compose_exponent,
    epsilon_budget,
    eta,
    gamma,
    leafcount_bound_check,
    optimize_thetas,
    tcount_constant_check,
)
from sat2ct.errors import DomainError, EmptyGrid, Overflow
from sat2ct.sparsify import ThetaParams

REFERENCE = ThetaParams(DEFAULT_THETA1, DEFAULT_THETA2)

# frozen from an independent 30-digit mpmath evaluation of the definitions
GAMMA_REFERENCE = 0.268298152486546
ETA_REFERENCE = 116953.19
TOTAL_REFERENCE = 0.305058879167346
ENTROPY_AT_REFERENCE_ARG = 6.1314038e-4


# ---------------------------------------------------------------------------
# binary entropy
# ---------------------------------------------------------------------------


def test_entropy_examples():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert math.isclose(
        binary_entropy(3.80232e-5), ENTROPY_AT_REFERENCE_ARG, rel_tol=1e-6
    )


def test_entropy_domain():
    with pytest.raises(DomainError):
        binary_entropy(-0.1)
    with pytest.raises(DomainError):
        binary_entropy(1.1)


@given(st.floats(min_value=1e-12, max_value=1.0, exclude_max=True))
def test_entropy_symmetric(p):
    assert math.isclose(binary_entropy(p), binary_entropy(1 - p), abs_tol=1e-12)


def test_entropy_concave_on_grid():
    grid = [i / 101 for i in range(1, 101)]
    values = [binary_entropy(p) for p in grid]
    second_diff = [
        values[i + 1] - 2 * values[i] + values[i - 1] for i in range(1, 99)
    ]
    assert all(d <= 1e-12 for d in second_diff)


# ---------------------------------------------------------------------------
# eta / gamma
# ---------------------------------------------------------------------------


def test_eta_examples():
    assert eta(ThetaParams(1, 1)) == 4
    assert eta(ThetaParams(2, 4)) == 12
    assert abs(eta(REFERENCE) - ETA_REFERENCE) < 1e-9


def test_gamma_reference_value():
    assert abs(gamma(REFERENCE) - GAMMA_REFERENCE) < 1e-12


def test_gamma_formula_small_case():
    assert math.isclose(
        gamma(ThetaParams(2, 4)), 8 * binary_entropy(0.3125), rel_tol=1e-15
    )


def test_gamma_vanishes_along_quadratic_curve():
    values = [gamma(ThetaParams(t, 4 * t * t)) for t in (10, 100, 1000)]
    assert values[0] > values[1] > values[2]
    assert values[2] < 0.05
    assert gamma(ThetaParams(1e5, 4e10)) < 1e-3


def test_gamma_decreasing_in_theta2():
    for t1 in (2.0, 5.0, 50.0):
        samples = [gamma(ThetaParams(t1, t2)) for t2 in (t1, 4 * t1, 40 * t1, 400 * t1)]
        assert all(a > b for a, b in zip(samples, samples[1:]))


def test_gamma_domain_error():
    with pytest.raises(DomainError):
        gamma(ThetaParams(1, 1.01))


# ---------------------------------------------------------------------------
# binomial leaf-count inequality
# ---------------------------------------------------------------------------


def test_leafcount_examples():
    assert leafcount_bound_check(ThetaParams(2, 4), 10) is True
    assert leafcount_bound_check(ThetaParams(3, 8), 5) is True
    assert leafcount_bound_check(ThetaParams(2, 4), 1) is True


def test_leafcount_guards():
    with pytest.raises(DomainError):
        leafcount_bound_check(ThetaParams(2, 4), 0)
    with pytest.raises(Overflow):
        leafcount_bound_check(ThetaParams(2, 4), 10**6)


# ---------------------------------------------------------------------------
# exponent composition
# ---------------------------------------------------------------------------


def test_compose_exponent_reference_point():
    report = compose_exponent(SOLVER_EXPONENT_PER_LENGTH, REFERENCE)
    assert abs(report.total_exponent - TOTAL_REFERENCE) < 1e-9
    assert report.budget == DEFAULT_BUDGET_BITS
    assert report.within_budget
    # the product reading collapses to a*eta-scale and is reported, not chosen
    assert report.total_exponent_product_reading < 0.04
    assert report.total_exponent == report.a * report.eta + report.gamma


def test_compose_exponent_degenerate_solver():
    report = compose_exponent(0.0, ThetaParams(2, 4))
    assert report.total_exponent == gamma(ThetaParams(2, 4))


def test_compose_exponent_over_budget():
    report = compose_exponent(1e-5, REFERENCE)
    assert not report.within_budget


def test_tcount_constant_check():
    report = tcount_constant_check()
    assert report.product == T_GATES_PER_LENGTH * SIM_EXPONENT_PER_T
    assert math.isclose(report.product, 3.14314e-7, rel_tol=1e-9)
    assert report.rel_deviation <= 3e-4
    assert report.ok
    assert math.isclose(report.budget_bits, 0.378512, abs_tol=5e-7)
    assert T_GATES_PER_LENGTH * 1 == 14


# ---------------------------------------------------------------------------
# optimizer
# ---------------------------------------------------------------------------


def test_optimizer_beats_reference_point():
    result = optimize_thetas(SOLVER_EXPONENT_PER_LENGTH, reference=REFERENCE)
    assert result.best.total_exponent <= TOTAL_REFERENCE + 1e-12
    assert result.best.within_budget
    assert isinstance(result.reference_within_1pct, bool)
    assert result.reference is not None
    assert abs(result.reference.total_exponent - TOTAL_REFERENCE) < 1e-9


def test_optimizer_pushes_large_thetas_for_tiny_a():
    result = optimize_thetas(1e-12, grid_points=32, refinements=2)
    assert result.best.total_exponent < 0.01
    assert result.best.thetas.theta1 > 100


def test_optimizer_empty_grid():
    with pytest.raises(EmptyGrid):
        optimize_thetas(1e-7, grid_points=1)
    with pytest.raises(EmptyGrid):
        optimize_thetas(1e-7, theta1_range=(10.0, 1.0))


def test_epsilon_budget():
    eb = epsilon_budget(0.1, 12.0)
    assert eb.epsilon_prime == 0.05
    assert math.isclose(eb.per_length_exponent, 0.05 / 12.0)
    with pytest.raises(DomainError):
        epsilon_budget(0.0, 1.0)
