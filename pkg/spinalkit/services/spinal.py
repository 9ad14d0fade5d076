"""Word-level layer of a multi-edge spinal group.

Sections are computed straight from the spine form: a factor c^(a^t) of a
stabilizer word contributes, in coordinate y, the (y - t)-th entry of

    Phi(b^c) = (a^(c.e_1), ..., a^(c.e_(p-1)), b^c)

where c.e_x = sum_i c_i e_(i,x). The theta maps shorten commutator words and
are chained by a bounded breadth-first search.
"""

import logging
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass

from spinalkit.errors import (
    ContextMismatch,
    NotInDerived,
    NotInStabilizer,
    NormalizationFailed,
    NotNormalized,
    ReductionFailed,
)
from spinalkit.models import ThetaMap
from spinalkit.services import tree, words
from spinalkit.services.words import ExponentVector, ReducedWord
from spinalkit.services.zmodp import (
    CoordinateChange,
    DefiningTuple,
    apply_coordinate_change,
    normalize_defining_tuple,
    satisfies_normal_form,
)

logger = logging.getLogger(__name__)

CERTIFY_DEPTH = 3


@dataclass(frozen=True)
class SpinalGroup:
    E: DefiningTuple

    @classmethod
    def from_rows(cls, p: int, rows) -> "SpinalGroup":
        return cls(DefiningTuple.build(p, rows))

    @property
    def p(self) -> int:
        return self.E.p

    @property
    def r(self) -> int:
        return self.E.r

    @property
    def n_star(self) -> int:
        """Largest j with e_(1,j) non-zero."""
        return max(j for j in range(1, self.p) if self.E.entry(1, j))

    @property
    def normalized(self) -> bool:
        return self.E.entry(1, 1) == 1

    def a(self, s: int = 1) -> ReducedWord:
        return words.a_power(self.p, self.r, s)

    def b(self, i: int, exponent: int = 1) -> ReducedWord:
        return words.generator(self.p, self.r, i, exponent)

    def generators(self) -> list[ReducedWord]:
        return [self.a()] + [self.b(i) for i in range(1, self.r + 1)]

    def word(self, raw) -> ReducedWord:
        return words.reduce(self.p, self.r, raw)


@dataclass(frozen=True)
class SectionTuple:
    words: tuple[ReducedWord, ...]

    def __getitem__(self, index: int) -> ReducedWord:
        return self.words[index]

    def __iter__(self) -> Iterator[ReducedWord]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(w.length for w in self.words)


def _check_context(G: SpinalGroup, w: ReducedWord) -> None:
    if (w.p, w.r) != (G.p, G.r):
        raise ContextMismatch(f"word over ({w.p},{w.r}) used in a group over ({G.p},{G.r})")


def _phi_of_syllable(G: SpinalGroup, c: tuple[int, ...]) -> list[ReducedWord]:
    p, r = G.p, G.r
    coords = [
        words.a_power(p, r, sum(ci * row[x] for ci, row in zip(c, G.E.rows)))
        for x in range(p - 1)
    ]
    coords.append(words.b_word(p, r, c))
    return coords


def sections(G: SpinalGroup, w: ReducedWord) -> SectionTuple:
    _check_context(G, w)
    eps_a = words.exponents(w).eps_a
    if eps_a:
        raise NotInStabilizer(f"a-exponent sum {eps_a} is not 0 mod {G.p}")
    p = G.p
    spine = words.spine_form(w)
    coordinates: list[list[ReducedWord]] = [[] for _ in range(p)]
    for t, c in spine.factors:
        phi_c = _phi_of_syllable(G, c)
        for y in range(p):
            coordinates[y].append(phi_c[(y - t) % p])
    return SectionTuple(tuple(words.product(p, G.r, factors) for factors in coordinates))


def phi(G: SpinalGroup, w: ReducedWord, j: int) -> ReducedWord:
    """The j-th section, 1 <= j <= p."""
    if not 1 <= j <= G.p:
        raise ValueError(f"coordinate {j} outside 1..{G.p}")
    return sections(G, w)[j - 1]


def exponents_in_G(G: SpinalGroup, w: ReducedWord) -> ExponentVector:
    _check_context(G, w)
    return words.exponents(w)


def _check_theta_input(G: SpinalGroup, z: ReducedWord) -> None:
    _check_context(G, z)
    if not G.normalized:
        raise NotNormalized(f"e_11 = {G.E.entry(1, 1)}; normalize the defining tuple first")
    if not words.exponents(z).is_zero:
        raise NotInDerived("word has a non-zero exponent vector")


def theta1(G: SpinalGroup, z: ReducedWord) -> ReducedWord:
    """[a, z_1^-1]"""
    _check_theta_input(G, z)
    z1 = sections(G, z)[0]
    return words.commutator(G.a(), words.invert(z1))


def theta2(G: SpinalGroup, z: ReducedWord) -> ReducedWord:
    """[a, z_(n+1) ... z_p] with n = n_star."""
    _check_theta_input(G, z)
    tail = sections(G, z).words[G.n_star:]
    return words.commutator(G.a(), words.product(G.p, G.r, tail))


THETA_MAPS = {ThetaMap.theta1: theta1, ThetaMap.theta2: theta2}


def apply_theta(G: SpinalGroup, z: ReducedWord, which: ThetaMap) -> ReducedWord:
    return THETA_MAPS[which](G, z)


def _shorter_by_search(
    G: SpinalGroup, start: ReducedWord, budget: int
) -> tuple[ReducedWord, list[ThetaMap]] | None:
    target = start.length
    queue: deque[tuple[ReducedWord, list[ThetaMap]]] = deque([(start, [])])
    seen = {start}
    while queue:
        word, path = queue.popleft()
        if len(path) >= budget:
            continue
        for which in (ThetaMap.theta1, ThetaMap.theta2):
            image = apply_theta(G, word, which)
            if image.length < target:
                return image, path + [which]
            if image not in seen:
                seen.add(image)
                queue.append((image, path + [which]))
    return None


def reduce_commutator_length(
    G: SpinalGroup, z: ReducedWord, step_cap: int
) -> tuple[ReducedWord, list[ThetaMap]]:
    """Chain theta maps until the length is 0 or 2.

    Each stage searches breadth-first for the shortest sequence of maps that
    strictly shortens the current word; ``step_cap`` bounds the total number
    of maps applied over all stages.
    """
    _check_theta_input(G, z)
    if in_family_E(G.E):
        raise ReductionFailed(f"{G.E.as_lists()} lies in the family excluded from length reduction")

    current, trace = z, []
    while current.length > 2:
        found = _shorter_by_search(G, current, step_cap - len(trace))
        if found is None:
            raise ReductionFailed(
                f"no shortening of a length-{current.length} word within "
                f"{step_cap - len(trace)} remaining steps (cap {step_cap})"
            )
        current, stage = found
        trace.extend(stage)
        logger.debug("stage %s -> length %d", [m.value for m in stage], current.length)
    return current, trace


def replay(G: SpinalGroup, z: ReducedWord, trace: list[ThetaMap]) -> ReducedWord:
    for which in trace:
        z = apply_theta(G, z, which)
    return z


def in_kernel(G: SpinalGroup, w: ReducedWord, depth: int) -> bool:
    """Whether w acts trivially on the first ``depth`` levels."""
    _check_context(G, w)
    if depth == 0:
        return True
    if w.is_identity:
        return True
    if words.exponents(w).eps_a:
        return False
    return all(in_kernel(G, g, depth - 1) for g in sections(G, w))


def theta_motivation(G: SpinalGroup, z: ReducedWord, depth: int) -> list[tuple[ThetaMap, tree.Portrait, tree.Portrait]]:
    """Portraits of both sides of the identities that define the theta maps.

    phi_p(b_1^((a z)^-1)) = a . theta1(z)
    phi_p((b_1^k)^((a z)^(p-n))) = a . theta2(z), where k e_(1,n) = 1.
    """
    _check_theta_input(G, z)
    p, n = G.p, G.n_star
    az = words.multiply(G.a(), z)
    k = pow(G.E.entry(1, n), -1, p)

    first = phi(G, words.conjugate(G.b(1), words.invert(az)), p)
    second = phi(G, words.conjugate(G.b(1, k), words.power(az, p - n)), p)
    pairs = []
    for which, left in ((ThetaMap.theta1, first), (ThetaMap.theta2, second)):
        right = words.multiply(G.a(), apply_theta(G, z, which))
        pairs.append((which, tree.eval_word(G, left, depth), tree.eval_word(G, right, depth)))
    return pairs


def is_torsion(E: DefiningTuple) -> bool:
    return all(sum(row) % E.p == 0 for row in E.rows)


def witness_row_for_infinite_order(E: DefiningTuple) -> int | None:
    """First (1-based) row whose coordinates do not sum to 0 mod p."""
    for i, row in enumerate(E.rows, start=1):
        if sum(row) % E.p:
            return i
    return None


def in_family_E(E: DefiningTuple) -> bool:
    p = E.p
    first = (1,) + (0,) * (p - 2)
    return (
        E.rows[0] == first
        and all(row[0] == 1 for row in E.rows)
        and any(row[p - 2] for row in E.rows)
    )


def is_exceptional_G(E: DefiningTuple) -> bool:
    row = E.rows[0]
    return E.r == 1 and row[0] != 0 and len(set(row)) == 1


def certify_coordinate_change(
    E: DefiningTuple, normalized: DefiningTuple, witness: CoordinateChange, depth: int = CERTIFY_DEPTH
) -> bool:
    """Check (prod_j b_j^M_ij)^f = b~_i as depth-``depth`` portraits for every row i."""
    G, H = SpinalGroup(E), SpinalGroup(normalized)
    f = tree.witness_automorphism(witness, depth)
    for i, row in enumerate(witness.generator_matrix, start=1):
        combined = tree.eval_word(G, words.b_word(E.p, E.r, row), depth)
        if tree.conjugate(combined, f) != tree.eval_word(H, H.b(i), depth):
            logger.debug("row %d of %s fails the portrait certificate", i, E.as_lists())
            return False
    return True


def check_normalization(E: DefiningTuple, depth: int = CERTIFY_DEPTH) -> bool:
    try:
        normalized, witness = normalize_defining_tuple(E)
    except NormalizationFailed:
        return False
    return (
        satisfies_normal_form(normalized)
        and apply_coordinate_change(E, witness) == normalized
        and certify_coordinate_change(E, normalized, witness, depth)
    )
