"""Congruence quotients G/stab_G(n) as permutation groups on the p^n leaves.

Stabilizer chains, membership and normal closures come from
``sympy.combinatorics``. Level stabilizers are taken as pointwise
stabilizers in an augmented action that also permutes the level-k vertices.
"""

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import product

from sympy.combinatorics import Permutation, PermutationGroup

from spinalkit.config import settings
from spinalkit.errors import DegreeCap, DepthMismatch, NotInStabilizer, NotSubgroup
from spinalkit.services import tree
from spinalkit.services.spinal import SpinalGroup
from spinalkit.services.tree import LeafPermutation
from spinalkit.services.words import ReducedWord

logger = logging.getLogger(__name__)

Element = Permutation | LeafPermutation


@dataclass
class QuotientGroup:
    p: int
    depth: int
    group: PermutationGroup
    spinal: SpinalGroup | None = None

    @property
    def degree(self) -> int:
        return self.p**self.depth

    @property
    def generators(self) -> list[LeafPermutation]:
        return [LeafPermutation(self.p, self.depth, tuple(g.array_form)) for g in self.group.generators]

    def element(self, w: ReducedWord) -> Permutation:
        if self.spinal is None:
            raise ValueError("quotient was not built from a spinal group")
        return tree.to_leaf_perm(tree.eval_word(self.spinal, w, self.depth)).as_sympy()


@dataclass
class Subgroup:
    ambient: QuotientGroup
    group: PermutationGroup

    @property
    def p(self) -> int:
        return self.ambient.p

    @property
    def depth(self) -> int:
        return self.ambient.depth

    @property
    def degree(self) -> int:
        return self.ambient.degree


Group = QuotientGroup | Subgroup


def _ambient(X: Group) -> QuotientGroup:
    return X if isinstance(X, QuotientGroup) else X.ambient


def _perm(g: Element) -> Permutation:
    return g.as_sympy() if isinstance(g, LeafPermutation) else g


def _identity(degree: int) -> Permutation:
    return Permutation(degree - 1)


def _generated(degree: int, elems: Iterable[Permutation]) -> PermutationGroup:
    gens = [g for g in elems if not g.is_Identity]
    return PermutationGroup(gens or [_identity(degree)])


def _commutator(x: Permutation, y: Permutation) -> Permutation:
    # sympy composes left to right: (x*y)(i) = y(x(i))
    return ~x * ~y * x * y


def check_degree(p: int, depth: int, degree_cap: int | None = None) -> None:
    cap = settings.DEGREE_CAP if degree_cap is None else degree_cap
    if depth < 1:
        raise DepthMismatch(f"quotients need depth >= 1, got {depth}")
    if p**depth > cap:
        raise DegreeCap(f"p^n = {p}^{depth} = {p**depth} exceeds the degree cap {cap}")


def quotient(G: SpinalGroup, depth: int, degree_cap: int | None = None) -> QuotientGroup:
    check_degree(G.p, depth, degree_cap)
    gens = [tree.to_leaf_perm(tree.eval_word(G, g, depth)).as_sympy() for g in G.generators()]
    Q = QuotientGroup(G.p, depth, _generated(G.p**depth, gens), G)
    logger.debug("built quotient p=%d depth=%d with %d generators", G.p, depth, len(gens))
    return Q


def order(X: Group) -> int:
    return int(X.group.order())


def contains(X: Group, g: Element) -> bool:
    g = _perm(g)
    if g.size != X.degree:
        return False
    return bool(X.group.contains(g))


def _require_members(X: Group, elems: Sequence[Permutation]) -> None:
    for g in elems:
        if not contains(X, g):
            raise NotSubgroup(f"element {g.array_form} is not in the group")


def index(X: Group, S: Subgroup) -> int:
    _require_members(X, S.group.generators)
    return order(X) // order(S)


def is_subgroup(S: Group, X: Group) -> bool:
    return all(contains(X, g) for g in S.group.generators)


def trivial(X: Group) -> Subgroup:
    return Subgroup(_ambient(X), _generated(X.degree, []))


def subgroup(X: Group, elems: Iterable[Element]) -> Subgroup:
    elems = [_perm(g) for g in elems]
    _require_members(X, elems)
    return Subgroup(_ambient(X), _generated(X.degree, elems))


def normal_closure(X: Group, elems: Iterable[Element]) -> Subgroup:
    """Smallest normal subgroup of X containing ``elems``."""
    elems = [_perm(g) for g in elems]
    _require_members(X, elems)
    nontrivial = [g for g in elems if not g.is_Identity]
    if not nontrivial:
        return trivial(X)
    return Subgroup(_ambient(X), X.group.normal_closure(nontrivial))


def derived_subgroup(X: Group) -> Subgroup:
    gens = X.group.generators
    return normal_closure(X, [_commutator(x, y) for x, y in product(gens, repeat=2)])


def gamma3(X: Group) -> Subgroup:
    """[[X, X], X] as the normal closure of [[x, y], z] over generator triples."""
    gens = X.group.generators
    triples = [_commutator(_commutator(x, y), z) for x, y, z in product(gens, repeat=3)]
    return normal_closure(X, triples)


def lower_central_quotients(X: Group) -> dict[str, int]:
    return {
        "order": order(X),
        "derived": order(derived_subgroup(X)),
        "gamma3": order(gamma3(X)),
    }


def block_image(g: Permutation, p: int, depth: int, level: int) -> Permutation:
    """Induced permutation of the p^level vertices at ``level``."""
    block = p ** (depth - level)
    return Permutation([g(b * block) // block for b in range(p**level)])


def block_action(X: Group, level: int) -> PermutationGroup:
    """Image of X on the vertices at ``level``; a plain sympy group, not a subgroup of a quotient."""
    if not 1 <= level <= X.depth:
        raise DepthMismatch(f"level {level} outside 1..{X.depth}")
    images = [block_image(g, X.p, X.depth, level) for g in X.group.generators]
    return _generated(X.p**level, images)


def level_transitive(X: Group, level: int) -> bool:
    return bool(block_action(X, level).is_transitive())


def level_stabilizer(X: Group, level: int) -> Subgroup:
    """Kernel of the action of X on the vertices at ``level``."""
    if not 1 <= level <= X.depth:
        raise DepthMismatch(f"level {level} outside 1..{X.depth}")
    n, vertices = X.degree, X.p**level
    augmented = []
    for g in X.group.generators:
        images = list(g.array_form) + [n + i for i in block_image(g, X.p, X.depth, level).array_form]
        augmented.append(Permutation(images))
    stab = _generated(n + vertices, augmented).pointwise_stabilizer(list(range(n, n + vertices)))
    restricted = [Permutation(g.array_form[:n]) for g in stab.generators]
    return Subgroup(_ambient(X), _generated(n, restricted))


def vertex_leaves(p: int, depth: int, vertex: Sequence[int]) -> range:
    """Leaves below a vertex given by its 0-based coordinates."""
    if len(vertex) > depth or any(not 0 <= x < p for x in vertex):
        raise DepthMismatch(f"vertex {list(vertex)} is not a vertex of the depth-{depth} tree")
    block = p ** (depth - len(vertex))
    start = sum(x * p ** (len(vertex) - 1 - i) for i, x in enumerate(vertex)) * block
    return range(start, start + block)


def rigid_stabilizer(X: Group, vertex: Sequence[int]) -> Subgroup:
    """Elements of X fixing every leaf outside the subtree of ``vertex``."""
    leaves = vertex_leaves(X.p, X.depth, vertex)
    if not vertex:
        return Subgroup(_ambient(X), X.group)
    outside = [i for i in range(X.degree) if i not in leaves]
    stab = X.group.pointwise_stabilizer(outside)
    return Subgroup(_ambient(X), _generated(X.degree, stab.generators))


def rigid_level_stabilizer(X: Group, level: int) -> Subgroup:
    """Product of the rigid stabilizers of all vertices at ``level``."""
    gens: list[Permutation] = []
    for vertex in product(range(X.p), repeat=level):
        gens.extend(rigid_stabilizer(X, vertex).group.generators)
    return Subgroup(_ambient(X), _generated(X.degree, gens))


def section_at(g: Element, p: int, depth: int, vertex: Sequence[int]) -> LeafPermutation:
    """Restriction of g to the subtree of a vertex that g fixes."""
    g = _perm(g)
    leaves = vertex_leaves(p, depth, vertex)
    start = leaves.start
    local = tuple(g(start + j) - start for j in range(len(leaves)))
    if any(not 0 <= i < len(leaves) for i in local):
        raise NotInStabilizer(f"element does not fix vertex {list(vertex)}")
    return LeafPermutation(p, depth - len(vertex), local)


def block_sections(X: Group, s: Element) -> list[LeafPermutation]:
    """The p first-level sections of a level-1 stabilizer element."""
    s = _perm(s)
    if s.size != X.degree:
        raise NotInStabilizer(f"element of degree {s.size} in a group of degree {X.degree}")
    return [section_at(s, X.p, X.depth, (x,)) for x in range(X.p)]


def restrict_to_vertex(S: Group, vertex: Sequence[int]) -> QuotientGroup:
    gens = [section_at(g, S.p, S.depth, vertex).as_sympy() for g in S.group.generators]
    depth = S.depth - len(vertex)
    return QuotientGroup(S.p, depth, _generated(S.p**depth, gens))


def embed_in_block(h: Element, p: int, depth: int, x: int) -> Permutation:
    """Element acting as h below the level-1 vertex x and trivially elsewhere."""
    h = _perm(h)
    block = p ** (depth - 1)
    images = list(range(p**depth))
    for j in range(block):
        images[x * block + j] = x * block + h(j)
    return Permutation(images)


def fractal_sections_group(Q: QuotientGroup) -> QuotientGroup:
    """Group generated by first-coordinate sections of stab(1)."""
    stab = level_stabilizer(Q, 1)
    return restrict_to_vertex(stab, (0,))


def same_group(X: Group, Y: Group) -> bool:
    if X.degree != Y.degree or order(X) != order(Y):
        return False
    return is_subgroup(X, Y)


def brute_force_order(X: Group, cap: int) -> int:
    """Size of the closure of the generators, by breadth-first enumeration."""
    gens = [tuple(g.array_form) for g in X.group.generators]
    start = tuple(range(X.degree))
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in gens:
            nxt = tuple(g[i] for i in current)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise DegreeCap(f"closure exceeded {cap} elements")
                seen.add(nxt)
                queue.append(nxt)
    return len(seen)
