"""Seeded random words and tuples.

Every sampler takes a ``random.Random`` instance. Suites derive one per
(seed, salt) pair with :func:`rng_for`, so a counterexample replays from the
seed printed in its report.
"""

from random import Random

from spinalkit.errors import Unreachable
from spinalkit.services import words
from spinalkit.services.spinal import SpinalGroup
from spinalkit.services.words import ReducedWord
from spinalkit.services.zmodp import DefiningTuple, rows_independent


def rng_for(seed: int, salt: str) -> Random:
    return Random(f"{seed}:{salt}")


def _nonzero_syllable(rng: Random, p: int, r: int) -> tuple[int, ...]:
    while True:
        beta = tuple(rng.randrange(p) for _ in range(r))
        if any(beta):
            return beta


def random_raw(rng: Random, p: int, r: int, size: int) -> list[tuple[int, int]]:
    """Flat (generator index, exponent) sequence, unreduced."""
    return [(rng.randrange(r + 1), rng.randrange(-p, 2 * p)) for _ in range(size)]


def _assemble(p: int, r: int, a_exponents: list[int], syllables: list[tuple[int, ...]]) -> ReducedWord:
    parts = []
    for s, beta in zip(a_exponents, syllables):
        parts.append(words.a_power(p, r, s))
        parts.append(words.b_word(p, r, beta))
    parts.append(words.a_power(p, r, a_exponents[-1]))
    return words.product(p, r, parts)


def random_word(rng: Random, p: int, r: int, length: int) -> ReducedWord:
    """Uniformly chosen reduced word with exactly ``length`` b-syllables."""
    syllables = [_nonzero_syllable(rng, p, r) for _ in range(length)]
    a_exponents = [rng.randrange(p)]
    a_exponents += [rng.randrange(1, p) for _ in range(max(length - 1, 0))]
    if length:
        a_exponents.append(rng.randrange(p))
    return _assemble(p, r, a_exponents, syllables)


def random_stabilizer_word(rng: Random, G: SpinalGroup, length: int) -> ReducedWord:
    """Reduced word of the given length whose a-exponents sum to 0."""
    p, r = G.p, G.r
    syllables = [_nonzero_syllable(rng, p, r) for _ in range(length)]
    a_exponents = [rng.randrange(p)] + [rng.randrange(1, p) for _ in range(max(length - 1, 0))]
    if length:
        a_exponents.append((-sum(a_exponents)) % p)
    else:
        a_exponents = [0]
    return _assemble(p, r, a_exponents, syllables)


def random_derived_word(
    G: SpinalGroup, target_length: int, seed: int | Random, retry_cap: int = 1000
) -> ReducedWord:
    """Word with zero exponent vector and exactly ``target_length`` b-syllables.

    The last b-syllable is forced to cancel the others and the last a-power to
    cancel the rest; a draw is retried when the forced syllable vanishes.
    """
    rng = seed if isinstance(seed, Random) else Random(seed)
    p, r = G.p, G.r
    if target_length == 0:
        return words.identity(p, r)
    if target_length == 1:
        raise Unreachable("derived words never have exactly one b-syllable")
    if target_length < 0:
        raise Unreachable(f"negative length {target_length}")
    for _ in range(retry_cap):
        syllables = [_nonzero_syllable(rng, p, r) for _ in range(target_length - 1)]
        last = tuple((-sum(beta[i] for beta in syllables)) % p for i in range(r))
        if not any(last):
            continue
        syllables.append(last)
        a_exponents = [rng.randrange(p)] + [rng.randrange(1, p) for _ in range(target_length - 1)]
        a_exponents.append((-sum(a_exponents)) % p)
        return _assemble(p, r, a_exponents, syllables)
    raise Unreachable(f"no derived word of length {target_length} after {retry_cap} draws")


def random_tuple(rng: Random, p: int, r: int) -> DefiningTuple:
    while True:
        rows = [[rng.randrange(p) for _ in range(p - 1)] for _ in range(r)]
        if rows_independent(p, rows):
            return DefiningTuple.build(p, rows)
