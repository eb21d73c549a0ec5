from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effcone.errors import DimensionMismatchError, InvalidModulusError
from effcone.kernel import (
    MatrixQ,
    as_fraction,
    nonneg_combination,
    primitive,
    rank_mod_p,
    rank_nullspace,
    rank_q,
    verify_combination,
    verify_separator,
)
from effcone.oracle import InterpolationProblem, condition_matrix, sample_lines

from oracles import brute_force_member, sympy_rank

EFF_X2_RAYS = [(0, -1, 0), (0, 0, -1), (1, 1, 0), (1, 0, 1)]
EFF_X3_RAYS = [(0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1),
               (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (2, 1, 1, 1)]


def test_identity_rank():
    rank, basis = rank_nullspace(MatrixQ.from_rows([[1, 0], [0, 1]]))
    assert rank == 2
    assert basis == []


def test_proportional_rows():
    rank, basis = rank_nullspace(MatrixQ.from_rows([[1, 2], [2, 4]]))
    assert rank == 1
    assert basis == [(Fraction(-2), Fraction(1))]


def test_quadric_condition_matrix_over_prime_field():
    cfg = sample_lines(3, 65521, 0)
    A = condition_matrix(InterpolationProblem(2, (1, 1, 1), cfg))
    M = MatrixQ.from_rows(A.tolist(), prime=65521)
    rank, basis = rank_nullspace(M)
    assert (rank, len(basis)) == (9, 1)
    assert all(x == 0 for x in M.apply(basis[0]))


def test_composite_modulus_rejected():
    with pytest.raises(InvalidModulusError):
        MatrixQ.from_rows([[1, 2]], prime=65520)
    with pytest.raises(InvalidModulusError):
        rank_nullspace(MatrixQ(1, 2, (1, 2), prime=91))


def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("3/2") == Fraction(3, 2)


def test_primitive():
    assert primitive([Fraction(1, 2), 1, Fraction(-3, 2)]) == (1, 2, -3)
    assert primitive([0, 0]) == (0, 0)


small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)]


@given(int_matrices())
@settings(max_examples=150, deadline=None)
def test_rank_plus_nullity_over_q(rows):
    M = MatrixQ.from_rows(rows)
    rank, basis = rank_nullspace(M)
    assert rank + len(basis) == M.cols
    assert rank == sympy_rank(rows)
    for v in basis:
        assert all(x == 0 for x in M.apply(v))


@given(int_matrices(), st.sampled_from([2, 3, 7, 65521]))
@settings(max_examples=150, deadline=None)
def test_prime_field_rank_never_exceeds_rational_rank(rows, p):
    Mp = MatrixQ.from_rows(rows, prime=p)
    rank_p, basis = rank_nullspace(Mp)
    assert rank_p <= rank_q(rows)
    assert rank_p + len(basis) == Mp.cols
    for v in basis:
        assert all(x == 0 for x in Mp.apply(v))


def test_rank_mod_p_is_deterministic():
    rng = np.random.default_rng(5)
    A = rng.integers(0, 65521, size=(30, 20))
    assert rank_mod_p(A, 65521) == rank_mod_p(A.copy(), 65521) == 20


def test_zero_target_gives_zero_coefficients():
    sol = nonneg_combination((0, 0, 0), EFF_X2_RAYS)
    assert sol.feasible
    assert sol.coefficients == (0, 0, 0, 0)


def test_quadric_class_is_single_generator():
    sol = nonneg_combination((2, 1, 1, 1), EFF_X3_RAYS)
    assert sol.coefficients == (0, 0, 0, 0, 0, 0, 1)


def test_infeasible_target_has_separator():
    target = (1, 2, -1)
    # reference: outside the cone by explicit facet enumeration
    assert not brute_force_member(EFF_X2_RAYS, target)
    sol = nonneg_combination(target, EFF_X2_RAYS)
    assert not sol.feasible
    assert sol.coefficients is None
    assert verify_separator(target, EFF_X2_RAYS, sol.separator)
    # the separator found is the facet m1 <= d
    assert sol.separator == (1, -1, 0)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        nonneg_combination((1, 2), [(1, 2, 3)])


def test_no_generators():
    sol = nonneg_combination((1, 0), [])
    assert not sol.feasible
    assert verify_separator((1, 0), [], sol.separator)


def test_rational_target():
    sol = nonneg_combination((Fraction(3, 2), Fraction(1, 2), 0), EFF_X2_RAYS)
    assert sol.feasible
    assert verify_combination(sol.target, EFF_X2_RAYS, sol.coefficients)


@st.composite
def conic_instances(draw):
    n = draw(st.integers(1, 5))
    k = draw(st.integers(0, 7))
    gens = [tuple(draw(small_ints) for _ in range(n)) for _ in range(k)]
    target = tuple(draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
                   for _ in range(n))
    return target, gens


@given(conic_instances())
@settings(max_examples=300, deadline=None)
def test_farkas_dichotomy(instance):
    target, gens = instance
    sol = nonneg_combination(target, gens)
    assert (sol.coefficients is None) != (sol.separator is None)
    if sol.feasible:
        assert verify_combination(target, gens, sol.coefficients)
    else:
        assert verify_separator(target, gens, sol.separator)
