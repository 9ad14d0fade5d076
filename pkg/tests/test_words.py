from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from spinalkit.errors import ContextMismatch, NotInL
from spinalkit.services import sampling, words
from spinalkit.services.spinal import SpinalGroup
from spinalkit.services.words import ExponentVector, ReducedWord, SpineForm
from spinalkit.services.zmodp import DefiningTuple

CONTEXTS = [(3, 1), (3, 2), (5, 1), (5, 3)]


@st.composite
def word_pairs(draw):
    p, r = draw(st.sampled_from(CONTEXTS))
    rng = Random(draw(st.integers(0, 10**6)))
    u = sampling.random_word(rng, p, r, draw(st.integers(0, 7)))
    v = sampling.random_word(rng, p, r, draw(st.integers(0, 7)))
    return u, v


@st.composite
def raw_words(draw):
    p, r = draw(st.sampled_from(CONTEXTS))
    raw = draw(st.lists(st.tuples(st.integers(0, r), st.integers(-2 * p, 2 * p)), max_size=15))
    return p, r, raw


def test_relators_reduce_to_identity():
    assert words.reduce(3, 1, [(0, 1), (0, 2)]).is_identity
    assert words.reduce(3, 1, [(1, 1), (1, 2)]).is_identity
    assert words.reduce(5, 2, [(0, 5), (2, 5)]).is_identity


def test_b_generators_commute():
    left = words.reduce(3, 2, [(1, 1), (2, 1)])
    right = words.reduce(3, 2, [(2, 1), (1, 1)])
    assert left == right == words.b_word(3, 2, (1, 1))
    assert left.length == 1


def test_conjugate_of_b_by_a():
    w = words.reduce(3, 1, [(0, -1), (1, 1), (0, 1)])
    assert w.a_exponents == (2, 1)
    assert w.b_syllables == ((1,),)
    assert w.length == 1


def test_commutator_normal_form():
    a, b = words.a_power(3, 1), words.generator(3, 1, 1)
    z = words.commutator(a, b)
    assert z.a_exponents == (2, 1, 0)
    assert z.b_syllables == ((2,), (1,))
    assert z.length == 2
    assert words.exponents(z).is_zero


def test_letters_follow_the_normal_form():
    w = words.reduce(3, 2, [(1, 1), (0, 2), (2, 1)])
    assert w.letters() == [("b", (1, 0)), ("a", 2), ("b", (0, 1))]


def test_word_validation():
    with pytest.raises(ValueError):
        ReducedWord(3, 1, (1, 0, 1), ((1,), (1,)))
    with pytest.raises(ValueError):
        ReducedWord(3, 1, (0, 0), ((0,),))
    with pytest.raises(ValueError):
        ReducedWord(3, 1, (0,), ((1,),))


def test_context_errors():
    with pytest.raises(ContextMismatch):
        words.b_word(3, 2, (1,))
    with pytest.raises(ContextMismatch):
        words.reduce(3, 1, [(2, 1)])
    with pytest.raises(ContextMismatch):
        words.multiply(words.a_power(3, 1), words.a_power(5, 1))


def test_power_and_conjugate():
    a = words.a_power(5, 1, 1)
    assert words.power(a, 5).is_identity
    assert words.power(a, -2) == words.a_power(5, 1, 3)
    b = words.generator(5, 1, 1)
    assert words.conjugate(b, words.identity(5, 1)) == b


def test_exponent_vector_addition():
    u = ExponentVector(3, 1, (2, 0))
    v = ExponentVector(3, 2, (2, 1))
    assert u + v == ExponentVector(3, 0, (1, 1))
    assert not (u + v).is_zero


@given(raw_words())
@settings(max_examples=80, deadline=None)
def test_reduction_is_idempotent(case):
    p, r, raw = case
    w = words.reduce(p, r, raw)
    flat = []
    for kind, value in w.letters():
        if kind == "a":
            flat.append((words.A_GENERATOR, value))
        else:
            flat.extend((i, e) for i, e in enumerate(value, start=1) if e)
    assert words.reduce(p, r, flat) == w


@given(word_pairs())
@settings(max_examples=80, deadline=None)
def test_exponents_are_a_homomorphism(pair):
    u, v = pair
    assert words.exponents(u * v) == words.exponents(u) + words.exponents(v)


@given(word_pairs())
@settings(max_examples=80, deadline=None)
def test_length_is_subadditive(pair):
    u, v = pair
    assert (u * v).length <= u.length + v.length


@given(word_pairs())
@settings(max_examples=80, deadline=None)
def test_multiplication_is_associative(pair):
    u, v = pair
    w = words.commutator(u, v)
    assert (u * v) * w == u * (v * w)


@given(word_pairs())
@settings(max_examples=80, deadline=None)
def test_inverse_cancels(pair):
    u, _ = pair
    inverse = words.invert(u)
    assert inverse.length == u.length
    assert (u * inverse).is_identity
    assert (inverse * u).is_identity


def test_spine_form_of_a_conjugate():
    w = words.conjugate(words.generator(3, 1, 1), words.a_power(3, 1))
    spine = words.spine_form(w)
    assert spine.factors == ((1, (1,)),)
    assert words.from_spine_form(spine) == w


def test_spine_form_needs_zero_a_exponent():
    with pytest.raises(NotInL):
        words.spine_form(words.a_power(3, 1, 1))


def test_spine_form_rejects_repeated_powers():
    with pytest.raises(ValueError):
        SpineForm(3, 1, ((1, (1,)), (1, (2,))))


@given(st.sampled_from(CONTEXTS), st.integers(0, 10**6), st.integers(0, 9))
@settings(max_examples=80, deadline=None)
def test_spine_form_round_trip(context, seed, length):
    p, r = context
    G = SpinalGroup(DefiningTuple.build(p, [[int(i == j) for j in range(p - 1)] for i in range(r)]))
    w = sampling.random_stabilizer_word(Random(seed), G, length)
    spine = words.spine_form(w)
    assert len(spine.factors) == w.length
    assert words.from_spine_form(spine) == w
