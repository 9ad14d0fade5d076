from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from spinalkit.errors import ContextMismatch, DepthMismatch
from spinalkit.services import sampling, tree, words
from spinalkit.services.spinal import SpinalGroup
from spinalkit.services.tree import LeafPermutation, Portrait
from spinalkit.services.zmodp import CoordinateChange, DefiningTuple

GS3 = SpinalGroup.from_rows(3, [[1, 2]])
ME3 = SpinalGroup.from_rows(3, [[1, 0], [1, 1]])
GS5 = SpinalGroup.from_rows(5, [[1, 4, 0, 0]])


def test_identity_dump():
    assert tree.dump(tree.identity(3, 0)) == "e"
    assert tree.dump(tree.identity(3, 1)) == "(1 2 3)[e,e,e]"


def test_rotation_dump():
    assert tree.dump(tree.rotation(3, 1, 1)) == "(2 3 1)[e,e,e]"
    assert tree.rotation(3, 2, 3) == tree.identity(3, 2)


def test_directed_generator_portrait():
    b = tree.eval_word(GS3, GS3.b(1), 2)
    assert tree.dump(b) == "(1 2 3)[(2 3 1)[e,e,e],(3 1 2)[e,e,e],(1 2 3)[e,e,e]]"
    assert tree.is_identity(tree.eval_word(GS3, GS3.b(1), 1))
    assert tree.directed(GS3.E, (1,), 2) == b


def test_directed_with_several_rows():
    b = tree.directed(ME3.E, (1, 1), 1)
    assert b.label == (0, 1, 2)
    # (1,0) + (1,1) = (2,1)
    b = tree.directed(ME3.E, (1, 1), 2)
    assert [child.label for child in b.children[:2]] == [(2, 0, 1), (1, 2, 0)]


def test_compose_applies_left_factor_first():
    a = tree.eval_word(GS3, GS3.a(), 2)
    b = tree.eval_word(GS3, GS3.b(1), 2)
    ab = tree.compose(a, b)
    assert ab.label == a.label
    # vertex 0 goes to 1 under a, then b acts there through its section a^2
    assert ab.children[0] == b.children[1]
    assert ab == a * b


def test_conjugate_matches_word_conjugate():
    a = tree.eval_word(GS3, GS3.a(), 3)
    b = tree.eval_word(GS3, GS3.b(1), 3)
    w = words.conjugate(GS3.b(1), GS3.a())
    assert tree.conjugate(b, a) == tree.eval_word(GS3, w, 3)


def test_invert_and_power():
    f = tree.eval_word(GS3, words.multiply(GS3.a(), GS3.b(1)), 3)
    assert tree.is_identity(tree.compose(f, tree.invert(f)))
    assert tree.power(f, -1) == tree.invert(f)
    assert tree.is_identity(tree.power(tree.rotation(3, 3, 1), 3))


@pytest.mark.parametrize(
    "G, depth, expected",
    [(GS3, 1, 3), (GS3, 2, 3), (GS3, 3, 9), (GS5, 3, 25)],
)
def test_order_of_a_b1(G, depth, expected):
    ab = words.multiply(G.a(), G.b(1))
    assert tree.order(tree.eval_word(G, ab, depth)) == expected


def test_order_of_non_p_element():
    # transposition of two leaves at depth 1
    f = Portrait(3, 1, (1, 0, 2), (tree.identity(3, 0),) * 3)
    assert tree.order(f) == 2


def test_depth_mismatch():
    with pytest.raises(DepthMismatch):
        tree.compose(tree.identity(3, 1), tree.identity(3, 2))


def test_eval_word_context_mismatch():
    with pytest.raises(ContextMismatch):
        tree.eval_word(GS3, GS5.b(1), 2)


def test_portrait_validation():
    with pytest.raises(ValueError):
        Portrait(3, 1, (0, 0, 2), (tree.identity(3, 0),) * 3)
    with pytest.raises(ValueError):
        Portrait(3, 1, (0, 1, 2), (tree.identity(3, 0),) * 2)


def test_leaf_permutation_of_rotation():
    perm = tree.to_leaf_perm(tree.rotation(3, 2, 1))
    assert perm.images == (3, 4, 5, 6, 7, 8, 0, 1, 2)
    assert perm.degree == 9
    assert tree.from_leaf_perm(perm) == tree.rotation(3, 2, 1)


def test_from_leaf_perm_needs_blocks():
    with pytest.raises(ValueError):
        tree.from_leaf_perm(LeafPermutation(3, 2, (3, 1, 2, 0, 4, 5, 6, 7, 8)))


def test_witness_automorphism():
    identity_change = CoordinateChange.identity(3, 1)
    assert tree.is_identity(tree.witness_automorphism(identity_change, 3))
    change = CoordinateChange(p=3, power=2, k=2, l=2, generator_matrix=((2,),))
    f = tree.witness_automorphism(change, 2)
    assert f.label == (1, 0, 2)
    assert all(child.label == (1, 0, 2) for child in f.children)


@st.composite
def word_pairs(draw):
    G = draw(st.sampled_from([GS3, ME3, GS5]))
    rng = Random(draw(st.integers(0, 10**6)))
    u = sampling.random_word(rng, G.p, G.r, draw(st.integers(0, 5)))
    v = sampling.random_word(rng, G.p, G.r, draw(st.integers(0, 5)))
    return G, u, v


@given(word_pairs(), st.integers(0, 3))
@settings(max_examples=50, deadline=None)
def test_eval_word_is_a_homomorphism(case, depth):
    G, u, v = case
    left = tree.eval_word(G, words.multiply(u, v), depth)
    right = tree.compose(tree.eval_word(G, u, depth), tree.eval_word(G, v, depth))
    assert left == right


@given(word_pairs())
@settings(max_examples=30, deadline=None)
def test_leaf_permutations_compose_like_portraits(case):
    G, u, v = case
    f, g = tree.eval_word(G, u, 2), tree.eval_word(G, v, 2)
    composed = tree.to_leaf_perm(tree.compose(f, g)).as_sympy()
    # sympy applies the left factor first as well
    assert composed == tree.to_leaf_perm(f).as_sympy() * tree.to_leaf_perm(g).as_sympy()
    assert tree.from_leaf_perm(tree.to_leaf_perm(f)) == f


def test_directed_is_trivial_on_the_first_level():
    E = DefiningTuple.build(5, [[1, 4, 0, 0]])
    assert tree.directed(E, (1,), 1) == tree.identity(5, 1)


@given(word_pairs(), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_orders_are_powers_of_p(case, depth):
    G, u, _ = case
    n = tree.order(tree.eval_word(G, u, depth))
    while n % G.p == 0:
        n //= G.p
    assert n == 1


def test_negative_depth_is_rejected():
    with pytest.raises(DepthMismatch):
        tree.eval_word(GS3, GS3.a(), -1)
    with pytest.raises(DepthMismatch):
        tree.identity(3, -2)
    change = CoordinateChange(p=3, power=2, k=2, l=2, generator_matrix=((2,),))
    with pytest.raises(DepthMismatch):
        tree.witness_automorphism(change, -2)
