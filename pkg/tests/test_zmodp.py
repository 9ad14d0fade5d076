import pytest
from hypothesis import given, settings, strategies as st

from spinalkit.errors import InvalidTuple
from spinalkit.services import spinal
from spinalkit.services.zmodp import (
    CoordinateChange,
    DefiningTuple,
    apply_coordinate_change,
    conjugation_transform,
    is_nondegenerate,
    mat_mul,
    normalize_defining_tuple,
    rank,
    rows_independent,
    rref,
    satisfies_normal_form,
    validate_prime,
)

PRIMES = [3, 5, 7]


def test_rref_of_dependent_rows():
    # 2 * (1, 2) = (2, 1) mod 3
    assert rref([[2, 1], [1, 2]], 3) == ((1, 2), (0, 0))
    assert rank([[2, 1], [1, 2]], 3) == 1


def test_rref_swaps_to_find_a_pivot():
    assert rref([[0, 2], [1, 1]], 3) == ((1, 0), (0, 1))


def test_rref_of_empty_matrix():
    assert rref([], 5) == ()
    assert rank([], 5) == 0


@st.composite
def matrices(draw):
    p = draw(st.sampled_from(PRIMES))
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return p, rows


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_is_idempotent(case):
    p, rows = case
    once = rref(rows, p)
    assert rref(once, p) == once
    assert rank(once, p) == rank(rows, p)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_pivots_are_leading_ones(case):
    p, rows = case
    for row in rref(rows, p):
        nonzero = [x for x in row if x]
        if nonzero:
            assert nonzero[0] == 1


def test_mat_mul():
    assert mat_mul([[1, 1], [1, 2]], [[1, 2], [0, 1]], 3) == ((1, 0), (1, 1))


@pytest.mark.parametrize("p", [2, 4, 9, 37, 1])
def test_validate_prime_rejects(p):
    with pytest.raises(InvalidTuple):
        validate_prime(p)


@pytest.mark.parametrize("p", [3, 5, 7, 31])
def test_validate_prime_accepts(p):
    assert validate_prime(p) == p


@pytest.mark.parametrize(
    "p, rows",
    [
        (3, [[1, 2], [2, 1]]),  # dependent
        (3, [[0, 0]]),  # zero row
        (3, [[1, 2, 0]]),  # wrong width
        (3, [[1, 0], [0, 1], [1, 1]]),  # r > p - 1
        (3, []),
    ],
)
def test_defining_tuple_rejects(p, rows):
    with pytest.raises(InvalidTuple):
        DefiningTuple.build(p, rows)


def test_defining_tuple_reduces_entries():
    E = DefiningTuple.build(3, [[4, -1]])
    assert E.rows == ((1, 2),)
    assert E.entry(1, 2) == 2
    assert E.r == 1


def test_rows_independent():
    assert rows_independent(3, [[1, 0], [1, 1]])
    assert not rows_independent(5, [[1, 2, 3, 4], [2, 4, 1, 3]])


def test_is_nondegenerate():
    assert not is_nondegenerate((1, 0, 0, 0), 5)
    assert is_nondegenerate((1, 4, 0, 0), 5)
    # geometric rows are degenerate
    assert not is_nondegenerate((1, 2, 4, 3), 5)


def test_conjugation_transform_with_identity_rooted_part():
    assert conjugation_transform((1, 2), 1, 1, 3) == (1, 2)


def test_normalize_leaves_gupta_sidki_alone():
    E = DefiningTuple.build(3, [[1, 2]])
    normalized, witness = normalize_defining_tuple(E)
    assert normalized == E
    assert witness.is_identity
    assert witness == CoordinateChange.identity(3, 1)


def test_normalize_uses_a_power_of_b1():
    E = DefiningTuple.build(3, [[2, 1]])
    normalized, witness = normalize_defining_tuple(E)
    assert normalized.rows == ((1, 2),)
    assert (witness.power, witness.k, witness.l) == (2, 1, 1)
    assert witness.generator_matrix == ((2,),)


def test_normalize_conjugates_when_e11_vanishes():
    E = DefiningTuple.build(3, [[0, 1]])
    normalized, witness = normalize_defining_tuple(E)
    assert normalized.rows == ((1, 0),)
    assert (witness.k, witness.l) == (2, 2)
    assert witness.root_permutation == (1, 0, 2)
    assert spinal.check_normalization(E)


def test_normalize_two_rows_mod_three():
    E = DefiningTuple.build(3, [[1, 2], [0, 1]])
    normalized, witness = normalize_defining_tuple(E)
    assert normalized.rows == ((1, 0), (1, 1))
    assert witness.generator_matrix == ((1, 1), (1, 2))
    assert apply_coordinate_change(E, witness) == normalized


def test_satisfies_normal_form():
    assert satisfies_normal_form(DefiningTuple.build(5, [[1, 4, 0, 0]]))
    assert not satisfies_normal_form(DefiningTuple.build(5, [[2, 4, 0, 0]]))
    assert satisfies_normal_form(DefiningTuple.build(5, [[1, 0, 0, 0], [1, 0, 0, 1]]))
    assert not satisfies_normal_form(DefiningTuple.build(3, [[1, 1], [1, 0]]))


@st.composite
def defining_tuples(draw):
    p = draw(st.sampled_from([3, 5]))
    r = draw(st.integers(1, p - 2 if p > 3 else 2))
    row = st.lists(st.integers(0, p - 1), min_size=p - 1, max_size=p - 1)
    rows = draw(st.lists(row, min_size=r, max_size=r).filter(lambda rows: rows_independent(p, rows)))
    return DefiningTuple.build(p, rows)


@given(defining_tuples())
@settings(max_examples=40, deadline=None)
def test_normalize_reaches_normal_form(E):
    normalized, witness = normalize_defining_tuple(E)
    assert satisfies_normal_form(normalized)
    assert normalized.entry(1, 1) == 1
    assert apply_coordinate_change(E, witness) == normalized
    assert rows_independent(E.p, witness.generator_matrix)


@given(defining_tuples())
@settings(max_examples=15, deadline=None)
def test_normalization_is_certified_by_portraits(E):
    assert spinal.check_normalization(E, depth=2)
