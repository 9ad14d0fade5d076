"""Finite-depth automorphisms of the p-adic tree.

A depth-n portrait stores the permutation at the root and the p portraits
of depth n-1 hanging below it. Labels are 0-based one-line images; the
text dump is 1-based. Automorphisms act on the right, so ``compose(f, g)``
applies f first.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

from sympy.combinatorics import Permutation

from spinalkit.errors import ContextMismatch, DepthMismatch
from spinalkit.services.words import ReducedWord
from spinalkit.services.zmodp import CoordinateChange, DefiningTuple

if TYPE_CHECKING:
    from spinalkit.services.spinal import SpinalGroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Portrait:
    p: int
    depth: int
    label: tuple[int, ...]
    children: tuple["Portrait", ...]

    def __post_init__(self):
        if sorted(self.label) != list(range(self.p)):
            raise ValueError(f"label {self.label} is not a permutation of 0..{self.p - 1}")
        if self.depth == 0:
            if self.children or any(i != x for x, i in enumerate(self.label)):
                raise ValueError("a depth-0 portrait is the identity")
        elif len(self.children) != self.p or any(c.depth != self.depth - 1 for c in self.children):
            raise ValueError(f"depth-{self.depth} portrait needs {self.p} children of depth {self.depth - 1}")

    def __mul__(self, other: "Portrait") -> "Portrait":
        return compose(self, other)


@dataclass(frozen=True)
class LeafPermutation:
    """Action on the p^n level-n vertices, enumerated lexicographically."""

    p: int
    depth: int
    images: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.images)

    def as_sympy(self) -> Permutation:
        return Permutation(list(self.images))


def check_depth(depth: int) -> None:
    if depth < 0:
        raise DepthMismatch(f"portrait depth must be >= 0, got {depth}")


@lru_cache(maxsize=None)
def identity(p: int, depth: int) -> Portrait:
    check_depth(depth)
    if depth == 0:
        return Portrait(p, 0, tuple(range(p)), ())
    child = identity(p, depth - 1)
    return Portrait(p, depth, tuple(range(p)), (child,) * p)


def is_identity(f: Portrait) -> bool:
    if f is identity(f.p, f.depth):
        return True
    if any(i != x for x, i in enumerate(f.label)):
        return False
    return all(is_identity(child) for child in f.children)


@lru_cache(maxsize=None)
def rotation(p: int, depth: int, s: int) -> Portrait:
    """The rooted automorphism a^s."""
    s %= p
    if depth == 0 or s == 0:
        return identity(p, depth)
    return Portrait(p, depth, tuple((x + s) % p for x in range(p)), (identity(p, depth - 1),) * p)


def from_sections(children: tuple[Portrait, ...]) -> Portrait:
    """Portrait with trivial root and the given first-level sections."""
    p = len(children)
    depth = children[0].depth + 1
    return Portrait(p, depth, tuple(range(p)), tuple(children))


def _check_depths(f: Portrait, g: Portrait) -> None:
    if (f.p, f.depth) != (g.p, g.depth):
        raise DepthMismatch(f"portraits of (p, depth) ({f.p}, {f.depth}) and ({g.p}, {g.depth})")


def compose(f: Portrait, g: Portrait) -> Portrait:
    _check_depths(f, g)
    if f is identity(f.p, f.depth):
        return g
    if g is identity(g.p, g.depth):
        return f
    label = tuple(g.label[f.label[x]] for x in range(f.p))
    children = tuple(compose(f.children[x], g.children[f.label[x]]) for x in range(f.p))
    return Portrait(f.p, f.depth, label, children)


def compose_all(p: int, depth: int, portraits) -> Portrait:
    result = identity(p, depth)
    for f in portraits:
        result = compose(result, f)
    return result


def invert(f: Portrait) -> Portrait:
    if f.depth == 0:
        return f
    inverse = [0] * f.p
    for x, y in enumerate(f.label):
        inverse[y] = x
    children = tuple(invert(f.children[inverse[y]]) for y in range(f.p))
    return Portrait(f.p, f.depth, tuple(inverse), children)


def conjugate(f: Portrait, g: Portrait) -> Portrait:
    """f^g = g^-1 f g"""
    return compose(compose(invert(g), f), g)


def power(f: Portrait, k: int) -> Portrait:
    base = f if k >= 0 else invert(f)
    k = abs(k)
    result = identity(f.p, f.depth)
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


@lru_cache(maxsize=4096)
def _directed(rows: tuple[tuple[int, ...], ...], p: int, beta: tuple[int, ...], depth: int) -> Portrait:
    if depth == 0:
        return identity(p, 0)
    children = [
        rotation(p, depth - 1, sum(b * row[x] for b, row in zip(beta, rows)))
        for x in range(p - 1)
    ]
    children.append(_directed(rows, p, beta, depth - 1))
    return from_sections(tuple(children))


def directed(E: DefiningTuple, beta: tuple[int, ...], depth: int) -> Portrait:
    """Portrait of b_1^beta_1 ... b_r^beta_r."""
    return _directed(E.rows, E.p, tuple(x % E.p for x in beta), depth)


def eval_word(G: "SpinalGroup", w: ReducedWord, depth: int) -> Portrait:
    E = G.E
    if (w.p, w.r) != (E.p, E.r):
        raise ContextMismatch(f"word over ({w.p},{w.r}) evaluated in a group over ({E.p},{E.r})")
    check_depth(depth)
    factors = []
    for kind, value in w.letters():
        if kind == "a":
            factors.append(rotation(E.p, depth, value))
        else:
            factors.append(directed(E, value, depth))
    return compose_all(E.p, depth, factors)


def to_leaf_perm(f: Portrait) -> LeafPermutation:
    return LeafPermutation(f.p, f.depth, _leaf_images(f))


def _leaf_images(f: Portrait) -> tuple[int, ...]:
    if f.depth == 0:
        return (0,)
    block = f.p ** (f.depth - 1)
    images: list[int] = []
    for x in range(f.p):
        offset = f.label[x] * block
        images.extend(offset + j for j in _leaf_images(f.children[x]))
    return tuple(images)


def from_leaf_perm(perm: LeafPermutation) -> Portrait:
    return _from_images(perm.p, perm.depth, perm.images)


def _from_images(p: int, depth: int, images: tuple[int, ...]) -> Portrait:
    if depth == 0:
        return identity(p, 0)
    block = p ** (depth - 1)
    label = tuple(images[x * block] // block for x in range(p))
    children = []
    for x in range(p):
        local = tuple(images[x * block + j] - label[x] * block for j in range(block))
        if any(not 0 <= i < block for i in local):
            raise ValueError("permutation does not preserve the level-1 blocks")
        children.append(_from_images(p, depth - 1, local))
    return Portrait(p, depth, label, tuple(children))


def _is_p_element(f: Portrait) -> bool:
    shift = f.label[0]
    if any(f.label[x] != (x + shift) % f.p for x in range(f.p)):
        return False
    return all(_is_p_element(child) for child in f.children)


def order(f: Portrait) -> int:
    if _is_p_element(f):
        # the iterated wreath product of C_p has exponent p^depth
        k, g = 1, f
        while not is_identity(g):
            g = power(g, f.p)
            k *= f.p
        return k
    return int(to_leaf_perm(f).as_sympy().order())


def witness_automorphism(witness: CoordinateChange, depth: int) -> Portrait:
    """Automorphism with rooted part x -> l*x and every first-level section equal to itself."""
    check_depth(depth)
    if depth == 0 or witness.l == 1:
        return identity(witness.p, depth)
    child = witness_automorphism(witness, depth - 1)
    return Portrait(witness.p, depth, witness.root_permutation, (child,) * witness.p)


def dump(f: Portrait) -> str:
    if f.depth == 0:
        return "e"
    label = " ".join(str(i + 1) for i in f.label)
    return f"({label})[{','.join(dump(child) for child in f.children)}]"
