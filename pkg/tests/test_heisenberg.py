"""Ladder algebra on Gaussian-weighted polynomials and the Hermite identities."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liegen.heisenberg import (
    GROUND_STATE,
    GaussianWeighted,
    NormFactor,
    anticommutator_eigenvalue,
    apply_ladder,
    apply_word,
    discrete_anticommutator,
    discrete_commutator,
    discrete_matrix,
    disentangle_check,
    hermite_genfunc_check,
    hermite_recurrence,
    hermite_rodrigues,
    inner_product,
    mixed_basis,
    raising_consistency_residual,
    shift_series,
    verify_hermite_identity,
    weighted_overlap,
)
from liegen.numeric import (
    Polynomial,
    PowerSeries,
    SqrtRational,
    X,
    polynomial_at_series,
)

F = Fraction


# -- ladder action -------------------------------------------------------------

def test_lower_annihilates_ground_state():
    assert apply_ladder("lower", GROUND_STATE).is_zero


def test_raise_on_ground_state_symbolic_oracle():
    # oracle: (x - d/dx) e^{-x^2/2} = x e^{-x^2/2} + x e^{-x^2/2} = 2x w
    assert apply_ladder("raise", GROUND_STATE) == GaussianWeighted(2 * X)


@pytest.mark.parametrize("k", range(7))
def test_ladder_commutator_on_monomials(k):
    # raise lower - lower raise = -2 on p*w, i.e. [lower_norm, raise_norm] = 1
    # once each operator gives back its 1/sqrt(2)
    f = GaussianWeighted(X ** k)
    diff = apply_word(("raise", "lower"), f) - apply_word(("lower", "raise"), f)
    assert diff == (-2) * f


@pytest.mark.parametrize("k", range(13))
def test_representation_relations_on_monomials(k):
    f = GaussianWeighted(X ** k)
    # [lower, raise] = 2 * identity in scaled form
    comm = apply_word(("lower", "raise"), f) - apply_word(("raise", "lower"), f)
    assert comm == 2 * f
    # identity commutes with both ladder operators
    for kind in ("lower", "raise"):
        left = apply_ladder(kind, apply_ladder("identity", f))
        right = apply_ladder("identity", apply_ladder(kind, f))
        assert (left - right).is_zero


def test_position_and_derivative_combinations():
    # lower = position + derivative-with-weight relation:
    # (x + D)(p w) = p' w must equal position+derivative applied jointly
    f = GaussianWeighted(X ** 3 - 2 * X)
    combo = apply_ladder("position", f) + apply_ladder("derivative", f)
    assert combo == apply_ladder("lower", f)
    combo = apply_ladder("position", f) - apply_ladder("derivative", f)
    assert combo == apply_ladder("raise", f)


# -- Hermite construction --------------------------------------------------------

def test_hermite_low_orders():
    assert hermite_rodrigues(0) == Polynomial.constant(1)
    assert hermite_rodrigues(1) == hermite_recurrence(1) == 2 * X
    assert hermite_rodrigues(2) == hermite_recurrence(2) == 4 * X ** 2 - 2
    assert hermite_recurrence(3) == 8 * X ** 3 - 12 * X


@pytest.mark.parametrize("n", list(range(0, 65, 8)) + [64])
def test_rodrigues_matches_recurrence(n):
    assert hermite_rodrigues(n) == hermite_recurrence(n)


def test_hermite_above_max_raises():
    with pytest.raises(ValueError, match="above configured maximum"):
        hermite_rodrigues(65)
    assert hermite_rodrigues(65, max_n=65) == hermite_recurrence(65)


@pytest.mark.parametrize("n", range(0, 65, 4))
def test_hermite_parity(n):
    h = hermite_rodrigues(n)
    assert h.substitute({"x": -X}) == (-1) ** n * h


# -- identities -----------------------------------------------------------------

@pytest.mark.parametrize("which", ["ode_A2", "recursion_A3", "diffrel_A4"])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 17, 32])
def test_polynomial_identities_zero_residual(which, n):
    assert verify_hermite_identity(which, n).is_zero


def test_diffrel_n1_hand_value():
    # H_1' = 2 = 2*1*H_0, via the recurrence oracle
    h1 = hermite_recurrence(1)
    assert h1.differentiate("x") == 2 * hermite_recurrence(0)
    assert verify_hermite_identity("diffrel_A4", 1).is_zero


def test_anticommutator_eigenvalue_examples():
    assert anticommutator_eigenvalue(3) == 7
    assert anticommutator_eigenvalue(0) == 1
    assert verify_hermite_identity("anticommutator", 3).is_zero


def test_orthonormality_exact():
    assert verify_hermite_identity("orthonormality", 5).is_zero
    assert inner_product(5, 5).as_fraction() == 1
    assert inner_product(1, 0).is_zero  # odd integrand
    assert inner_product(4, 2).is_zero


def test_ground_state_normalization():
    # the bare Gaussian integrates to sqrt(pi): moment coefficient 1
    assert weighted_overlap(GROUND_STATE, GROUND_STATE) == 1
    _, norm = mixed_basis(0)
    assert norm.squared_value == 1


def test_norm_factor_invariant():
    for n in (0, 1, 5, 12):
        _, norm = mixed_basis(n)
        assert norm.squared_value * math.factorial(n) * 2 ** n == 1


def test_raising_consistency():
    for n in range(0, 21):
        poly_residual, norm_residual = raising_consistency_residual(n)
        assert poly_residual.is_zero
        assert norm_residual == 0


# -- discrete matrices ------------------------------------------------------------

def test_discrete_entries():
    lower = discrete_matrix("lower", 3)
    assert lower[0, 1] == SqrtRational(1)      # sqrt(1)
    assert lower[1, 2] == SqrtRational(1, 2)   # sqrt(2)
    assert lower[0, 0].is_zero
    ident = discrete_matrix("identity", 3)
    assert all(ident[i, i] == SqrtRational(1) for i in range(3))


def test_discrete_commutator_truncation_edge():
    comm = discrete_commutator(8)
    for n in range(7):
        assert comm[n, n].as_fraction() == 1
    assert comm[7, 7].as_fraction() == -7
    for i in range(8):
        for j in range(8):
            if i != j:
                assert comm[i, j].is_zero


def test_discrete_anticommutator_diagonal():
    anti = discrete_anticommutator(40)
    for n in range(39):
        assert anti[n, n].as_fraction() == 2 * n + 1
    for i in range(40):
        for j in range(40):
            if i != j:
                assert anti[i, j].is_zero


def test_discrete_matrix_rejects_small_dimension():
    with pytest.raises(ValueError):
        discrete_matrix("lower", 1)


# -- shift operator ------------------------------------------------------------

def test_shift_linear():
    s = shift_series(X, 1)
    assert s.coefficient(0) == X
    assert s.coefficient(1) == Polynomial.constant(-1)


def test_shift_square_binomial_oracle():
    # (x - t)^2 = x^2 - 2xt + t^2 by hand
    s = shift_series(X ** 2, 2)
    assert s.coefficient(0) == X ** 2
    assert s.coefficient(1) == -2 * X
    assert s.coefficient(2) == Polynomial.constant(1)


def test_shift_h3_composition_oracle():
    # oracle: compose H_3 with the series x - t directly
    h3 = hermite_recurrence(3)
    direct = polynomial_at_series(
        h3, PowerSeries.from_terms({0: X, 1: Polynomial.constant(-1)}, 3,
                                   Polynomial.zero()))
    assert (shift_series(h3, 3) - direct).is_zero


@given(n=st.integers(min_value=0, max_value=8))
@settings(max_examples=20)
def test_shift_matches_substitution(n):
    p = hermite_recurrence(n)
    direct = polynomial_at_series(
        p, PowerSeries.from_terms({0: X, 1: Polynomial.constant(-1)}, n + 1,
                                  Polynomial.zero()))
    assert (shift_series(p, n + 1) - direct).is_zero


# -- generating function and disentangling ----------------------------------------

def test_disentangle_low_orders_by_hand():
    residual = disentangle_check(2)
    assert residual.is_zero
    # spot-check the left side really carries H_k/k! * w
    lhs0 = GROUND_STATE
    lhs1 = apply_ladder("raise", GROUND_STATE)
    assert lhs0.poly == Polynomial.constant(1)
    assert lhs1.poly == 2 * X


def test_disentangle_through_order_32():
    assert disentangle_check(32).is_zero


def test_genfunc_coefficients():
    residual = hermite_genfunc_check(8)
    assert residual.is_zero


def test_genfunc_through_order_64():
    assert hermite_genfunc_check(64).is_zero


def test_checks_reject_zero_order():
    with pytest.raises(ValueError):
        disentangle_check(0)
    with pytest.raises(ValueError):
        hermite_genfunc_check(0)


# -- norm factor hygiene ------------------------------------------------------------

def test_norm_factor_rejects_nonpositive():
    with pytest.raises(ValueError):
        NormFactor(F(0))
