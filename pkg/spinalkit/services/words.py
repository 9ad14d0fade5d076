"""Reduced words in H = <a> * <b_1, ..., b_r>, with a^p = b_i^p = 1 and the b_i commuting.

Every element is stored in the unique alternating form

    a^s_1 . B_1 . a^s_2 . ... . B_m . a^s_(m+1)

where each B_j is a non-zero exponent vector over Z/p and the interior
a-exponents s_2..s_m are non-zero. The length of a word is m.

Conventions: x^g = g^-1 x g and [x, y] = x^-1 y^-1 x y.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from spinalkit.errors import ContextMismatch, NotInL

A_GENERATOR = 0

Syllable = tuple[int, ...]
# ("a", int) or ("b", Syllable)
Letter = tuple[str, int | Syllable]


@dataclass(frozen=True)
class ExponentVector:
    p: int
    eps_a: int
    eps_b: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.eps_a == 0 and not any(self.eps_b)

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        return ExponentVector(
            self.p,
            (self.eps_a + other.eps_a) % self.p,
            tuple((x + y) % self.p for x, y in zip(self.eps_b, other.eps_b)),
        )


@dataclass(frozen=True)
class ReducedWord:
    p: int
    r: int
    a_exponents: tuple[int, ...]
    b_syllables: tuple[Syllable, ...]

    def __post_init__(self):
        m = len(self.b_syllables)
        if len(self.a_exponents) != m + 1:
            raise ValueError("a_exponents must have one more entry than b_syllables")
        if any(not 0 <= s < self.p for s in self.a_exponents):
            raise ValueError("a-exponents must be reduced mod p")
        if any(s == 0 for s in self.a_exponents[1:m]):
            raise ValueError("interior a-exponents must be non-zero")
        for beta in self.b_syllables:
            if len(beta) != self.r or not any(beta) or any(not 0 <= x < self.p for x in beta):
                raise ValueError(f"invalid b-syllable {beta}")

    @property
    def length(self) -> int:
        return len(self.b_syllables)

    @property
    def is_identity(self) -> bool:
        return not self.b_syllables and self.a_exponents[0] == 0

    def letters(self) -> list[Letter]:
        out: list[Letter] = []
        for s, beta in zip(self.a_exponents, self.b_syllables):
            if s:
                out.append(("a", s))
            out.append(("b", beta))
        if self.a_exponents[-1]:
            out.append(("a", self.a_exponents[-1]))
        return out

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return multiply(self, other)


def _is_zero(value: int | Syllable) -> bool:
    return value == 0 if isinstance(value, int) else not any(value)


def _add(x: int | Syllable, y: int | Syllable, p: int) -> int | Syllable:
    if isinstance(x, int):
        return (x + y) % p
    return tuple((u + v) % p for u, v in zip(x, y))


def _push(stack: list[Letter], letter: Letter, p: int) -> None:
    kind, value = letter
    if stack and stack[-1][0] == kind:
        merged = _add(stack.pop()[1], value, p)
        if not _is_zero(merged):
            stack.append((kind, merged))
    elif not _is_zero(value):
        stack.append(letter)


def _from_letters(p: int, r: int, letters: Iterable[Letter]) -> ReducedWord:
    stack: list[Letter] = []
    for letter in letters:
        _push(stack, letter, p)
    a_exponents: list[int] = []
    syllables: list[Syllable] = []
    pending = 0
    for kind, value in stack:
        if kind == "a":
            pending = value
        else:
            a_exponents.append(pending)
            syllables.append(value)
            pending = 0
    a_exponents.append(pending)
    return ReducedWord(p, r, tuple(a_exponents), tuple(syllables))


def identity(p: int, r: int) -> ReducedWord:
    return ReducedWord(p, r, (0,), ())


def a_power(p: int, r: int, s: int = 1) -> ReducedWord:
    return _from_letters(p, r, [("a", s % p)])


def b_word(p: int, r: int, beta: Sequence[int]) -> ReducedWord:
    if len(beta) != r:
        raise ContextMismatch(f"b-syllable {list(beta)} does not have {r} entries")
    return _from_letters(p, r, [("b", tuple(x % p for x in beta))])


def generator(p: int, r: int, index: int, exponent: int = 1) -> ReducedWord:
    """``a^exponent`` for index 0, ``b_index^exponent`` for 1 <= index <= r."""
    return reduce(p, r, [(index, exponent)])


def reduce(p: int, r: int, raw: Iterable[tuple[int, int]]) -> ReducedWord:
    """Normal form of a flat sequence of (generator index, exponent) pairs."""
    letters: list[Letter] = []
    for index, exponent in raw:
        if index == A_GENERATOR:
            letters.append(("a", exponent % p))
        elif 1 <= index <= r:
            beta = [0] * r
            beta[index - 1] = exponent % p
            letters.append(("b", tuple(beta)))
        else:
            raise ContextMismatch(f"generator b{index} does not exist for r={r}")
    return _from_letters(p, r, letters)


def _check_context(u: ReducedWord, v: ReducedWord) -> None:
    if (u.p, u.r) != (v.p, v.r):
        raise ContextMismatch(f"cannot combine words over (p,r)=({u.p},{u.r}) and ({v.p},{v.r})")


def multiply(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    _check_context(u, v)
    return _from_letters(u.p, u.r, u.letters() + v.letters())


def product(p: int, r: int, words: Iterable[ReducedWord]) -> ReducedWord:
    letters: list[Letter] = []
    for w in words:
        if (w.p, w.r) != (p, r):
            raise ContextMismatch(f"word over ({w.p},{w.r}) in a ({p},{r}) product")
        letters.extend(w.letters())
    return _from_letters(p, r, letters)


def invert(w: ReducedWord) -> ReducedWord:
    p = w.p
    letters = [
        (kind, (-value) % p if kind == "a" else tuple((-x) % p for x in value))
        for kind, value in reversed(w.letters())
    ]
    return _from_letters(p, w.r, letters)


def power(w: ReducedWord, k: int) -> ReducedWord:
    base = w if k >= 0 else invert(w)
    return product(w.p, w.r, [base] * abs(k))


def conjugate(x: ReducedWord, g: ReducedWord) -> ReducedWord:
    """x^g = g^-1 x g"""
    _check_context(x, g)
    return product(x.p, x.r, [invert(g), x, g])


def commutator(x: ReducedWord, y: ReducedWord) -> ReducedWord:
    """[x, y] = x^-1 y^-1 x y"""
    _check_context(x, y)
    return product(x.p, x.r, [invert(x), invert(y), x, y])


def length(w: ReducedWord) -> int:
    return w.length


def exponents(w: ReducedWord) -> ExponentVector:
    eps_a = sum(w.a_exponents) % w.p
    eps_b = tuple(sum(beta[i] for beta in w.b_syllables) % w.p for i in range(w.r))
    return ExponentVector(w.p, eps_a, eps_b)


@dataclass(frozen=True)
class SpineForm:
    """w = prod_j (c_j)^(a^t_j) with consecutive t_j distinct."""

    p: int
    r: int
    factors: tuple[tuple[int, Syllable], ...]

    def __post_init__(self):
        for (t, _), (u, _) in zip(self.factors, self.factors[1:]):
            if t == u:
                raise ValueError("consecutive conjugating powers must differ")
        if any(not any(c) for _, c in self.factors):
            raise ValueError("spine factors must be non-trivial")


def spine_form(w: ReducedWord) -> SpineForm:
    if exponents(w).eps_a:
        raise NotInL(f"a-exponent sum {exponents(w).eps_a} is not 0 mod {w.p}")
    factors = []
    running = 0
    for s, beta in zip(w.a_exponents, w.b_syllables):
        running = (running + s) % w.p
        factors.append(((-running) % w.p, beta))
    return SpineForm(w.p, w.r, tuple(factors))


def from_spine_form(spine: SpineForm) -> ReducedWord:
    p, r = spine.p, spine.r
    return product(
        p, r,
        (conjugate(b_word(p, r, c), a_power(p, r, t)) for t, c in spine.factors),
    )
