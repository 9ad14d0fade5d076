"""Verification suites.

A suite runs one family of claims against a group and returns a
:class:`SuiteReport`. Random input comes from ``rng_for(seed, salt)`` so a
report is a function of (group, seed, caps) alone.
"""

import asyncio
import logging
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import product
from math import ceil
from random import Random

from spinalkit.errors import (
    DegreeCap,
    ReductionFailed,
    SpinalError,
    UnknownSuite,
)
from spinalkit.models import CLAIM_ANCHORS, CheckStatus, SuiteName
from spinalkit.schemas import Caps, CheckResult, GroupConfig, SuiteReport
from spinalkit.services import permgrp, sampling, spinal, tree, words
from spinalkit.services.golden import golden_value
from spinalkit.services.parsing import format_word
from spinalkit.services.spinal import SpinalGroup
from spinalkit.services.zmodp import DefiningTuple, normalize_defining_tuple, rows_independent

logger = logging.getLogger(__name__)

NORMALIZE_CASES = [(3, 1), (3, 2), (5, 1), (5, 2), (5, 3)]


class Tally:
    """Counts violations of a property and keeps the first counterexample."""

    def __init__(self):
        self.total = 0
        self.violations = 0
        self.counterexample: str | None = None

    def add(self, ok: bool, witness: str | Callable[[], str]) -> None:
        self.total += 1
        if not ok:
            self.violations += 1
            if self.counterexample is None:
                self.counterexample = witness() if callable(witness) else witness


@dataclass
class SuiteContext:
    suite: SuiteName
    config: GroupConfig
    group: SpinalGroup
    seed: int
    caps: Caps
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def label(self) -> str:
        return self.config.name

    def rng(self, salt: str) -> Random:
        return sampling.rng_for(self.seed, f"{self.suite.value}:{salt}")

    def record(self, name, observed, expected, ok: bool | None = None, counterexample: str | None = None) -> None:
        if ok is None:
            ok = observed == expected
        status = CheckStatus.passed if ok else CheckStatus.failed
        if not ok:
            logger.info("%s/%s: check %r failed", self.suite.value, self.label, name)
        self.checks.append(
            CheckResult(
                name=name,
                status=status,
                observed=str(observed),
                expected=str(expected),
                counterexample=counterexample,
            )
        )

    def record_tally(self, name: str, tally: Tally) -> None:
        self.record(
            name,
            f"{tally.violations} violations in {tally.total}",
            f"0 violations in {tally.total}",
            ok=tally.violations == 0,
            counterexample=tally.counterexample,
        )

    def note(self, name: str, observed) -> None:
        self.record(name, observed, "recorded", ok=True)

    def skip(self, name: str, reason: str) -> None:
        logger.warning("%s/%s: skipped %r (%s)", self.suite.value, self.label, name, reason)
        self.checks.append(
            CheckResult(name=name, status=CheckStatus.skipped, observed="-", expected=reason)
        )

    def golden(self, depth: int, quantity: str, observed: int) -> None:
        expected = golden_value(self.label, depth, quantity)
        if expected is not None:
            self.record(f"golden {quantity} at depth {depth}", observed, expected)

    def quotient(self, depth: int) -> permgrp.QuotientGroup | None:
        """Quotient at ``depth``, or None after recording a skip.

        The degree cap is checked before anything is built. The order work cap is
        checked after the stabilizer chain exists, so it bounds the subgroup
        computations that follow, not the order computation itself.
        """
        name = f"quotient at depth {depth}"
        try:
            Q = permgrp.quotient(self.group, depth, self.caps.degree_cap)
        except DegreeCap as exc:
            self.skip(name, exc.detail)
            return None
        if permgrp.order(Q) > self.caps.order_work_cap:
            self.skip(name, f"order exceeds the work cap {self.caps.order_work_cap}")
            return None
        return Q


SuiteFn = Callable[[SuiteContext], None]
SUITES: dict[SuiteName, SuiteFn] = {}


def suite(name: SuiteName):
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn

    return register


# Torsion


def expected_order_a_b(p: int, depth: int, torsion_row: bool) -> int:
    """Order of a*b_i acting on the first ``depth`` levels.

    (a b)^p has every section conjugate to a^s b, s the row sum; for s = 0
    that is b, of order p from depth 2 on, and otherwise a^s b again.
    """
    if not torsion_row:
        return p**depth
    return p if depth <= 2 else p * p


def orders_of_a_b(G: SpinalGroup, i: int, max_depth: int) -> list[int]:
    ab = words.multiply(G.a(), G.b(i))
    return [tree.order(tree.eval_word(G, ab, n)) for n in range(1, max_depth + 1)]


def _all_tuples(p: int, r: int):
    nonzero = [row for row in product(range(p), repeat=p - 1) if any(row)]
    for rows in product(nonzero, repeat=r):
        if rows_independent(p, rows):
            yield DefiningTuple.build(p, rows)


@suite(SuiteName.torsion)
def torsion_suite(ctx: SuiteContext) -> None:
    G, E, p = ctx.group, ctx.group.E, ctx.group.p
    depth = ctx.caps.torsion_depth
    row_sums = [sum(row) % p for row in E.rows]
    ctx.record("is_torsion agrees with row sums", spinal.is_torsion(E), all(s == 0 for s in row_sums))

    for i, s in enumerate(row_sums, start=1):
        observed = orders_of_a_b(G, i, depth)
        expected = [expected_order_a_b(p, n, s == 0) for n in range(1, depth + 1)]
        ctx.record(f"orders of a*b{i} at depths 1..{depth}", observed, expected)
        if i == 1:
            for n, value in enumerate(observed, start=1):
                ctx.golden(n, "order_a_b1", value)

    witness = spinal.witness_row_for_infinite_order(E)
    if witness is not None:
        orders = orders_of_a_b(G, witness, depth)
        ctx.record(
            f"orders of a*b{witness} strictly increase",
            orders,
            "strictly increasing",
            ok=all(x < y for x, y in zip(orders, orders[1:])),
        )

    if p != 3:
        ctx.skip("exhaustive sweep", "the sweep covers p = 3 only")
        return
    tally = Tally()
    for r in (1, 2):
        for T in _all_tuples(p, r):
            H = SpinalGroup(T)
            by_orders = all(orders_of_a_b(H, i, 3)[-1] == p * p for i in range(1, r + 1))
            tally.add(spinal.is_torsion(T) == by_orders, lambda T=T: str(T.as_lists()))
    ctx.record_tally("torsion classifier over every tuple with p=3, r<=2", tally)


# Words


def _relator(rng: Random, p: int, r: int) -> list[tuple[int, int]]:
    kind = rng.randrange(3) if r >= 2 else rng.randrange(2)
    if kind == 0:
        return [(0, p)]
    if kind == 1:
        return [(rng.randint(1, r), p)]
    i, j = rng.sample(range(1, r + 1), 2)
    return [(i, 1), (j, 1), (i, -1), (j, -1)]


@suite(SuiteName.words)
def words_suite(ctx: SuiteContext) -> None:
    G = ctx.group
    p, r = G.p, G.r
    rng = ctx.rng("samples")
    ctx.record("length of [a, b1]", words.commutator(G.a(), G.b(1)).length, 2)

    canonical, homomorphism, subadditive, inverse, spine = (Tally() for _ in range(5))
    for _ in range(ctx.caps.word_samples):
        raw = sampling.random_raw(rng, p, r, rng.randrange(12))
        padded = list(raw)
        for _ in range(rng.randint(1, 3)):
            at = rng.randrange(len(padded) + 1)
            padded[at:at] = _relator(rng, p, r)
        canonical.add(words.reduce(p, r, raw) == words.reduce(p, r, padded), lambda: str(raw))

        u = sampling.random_word(rng, p, r, rng.randrange(8))
        v = sampling.random_word(rng, p, r, rng.randrange(8))
        uv = words.multiply(u, v)
        pair = lambda: f"u={format_word(u)} v={format_word(v)}"  # noqa: E731
        homomorphism.add(words.exponents(uv) == words.exponents(u) + words.exponents(v), pair)
        subadditive.add(uv.length <= u.length + v.length, pair)
        u_inv = words.invert(u)
        inverse.add(u_inv.length == u.length and words.multiply(u, u_inv).is_identity, pair)

        x = sampling.random_stabilizer_word(rng, G, rng.randrange(10))
        spine.add(words.from_spine_form(words.spine_form(x)) == x, lambda: format_word(x))

    ctx.record_tally("reduction is canonical under inserted relators", canonical)
    ctx.record_tally("exponent map is a homomorphism", homomorphism)
    ctx.record_tally("length is subadditive", subadditive)
    ctx.record_tally("inverse keeps the length and cancels", inverse)
    ctx.record_tally("spine form multiplies back to the word", spine)


# Sections


@suite(SuiteName.sections)
def sections_suite(ctx: SuiteContext) -> None:
    G = ctx.group
    p, r = G.p, G.r
    rng = ctx.rng("bounds")

    total, ceiling, shorter, exponent_sums, shift, pth_power = (Tally() for _ in range(6))
    for _ in range(ctx.caps.section_samples):
        w = sampling.random_stabilizer_word(rng, G, rng.randint(0, ctx.caps.section_max_length))
        secs = spinal.sections(G, w)
        lengths = secs.lengths
        witness = lambda: format_word(w)  # noqa: E731
        total.add(sum(lengths) <= w.length, witness)
        ceiling.add(max(lengths) <= ceil(w.length / 2), witness)
        if w.length > 1:
            shorter.add(max(lengths) < w.length, witness)
        eps = words.exponents(w).eps_b
        summed = [sum(words.exponents(g).eps_b[i] for g in secs) % p for i in range(r)]
        exponent_sums.add(list(eps) == summed, witness)
        shifted = spinal.sections(G, words.conjugate(w, G.a()))
        shift.add(all(shifted[y] == secs[(y - 1) % p] for y in range(p)), witness)

        k = rng.randrange(1, p)
        h = sampling.random_stabilizer_word(rng, G, rng.randrange(5))
        x = words.multiply(G.a(k), h)
        h_sums = [sum(words.exponents(g).eps_b[i] for g in spinal.sections(G, h)) % p for i in range(r)]
        x_secs = spinal.sections(G, words.power(x, p))
        pth_power.add(
            all(list(words.exponents(g).eps_b) == h_sums for g in x_secs),
            lambda: f"k={k} h={format_word(h)}",
        )

    ctx.record_tally("sections have total length at most the length", total)
    ctx.record_tally("each section has length at most ceil(length/2)", ceiling)
    ctx.record_tally("sections are strictly shorter from length 2 on", shorter)
    ctx.record_tally("b-exponents are the sums over the sections", exponent_sums)
    ctx.record_tally("conjugating by a shifts the coordinates by one", shift)
    ctx.record_tally("sections of (a^k h)^p carry the b-exponents of h_1...h_p", pth_power)

    rng = ctx.rng("oracle")
    oracle = Tally()
    for _ in range(ctx.caps.oracle_samples):
        w = sampling.random_stabilizer_word(rng, G, rng.randint(0, 8))
        depth = rng.randint(1, ctx.caps.oracle_max_depth)
        assembled = tree.from_sections(
            tuple(tree.eval_word(G, g, depth - 1) for g in spinal.sections(G, w))
        )
        oracle.add(assembled == tree.eval_word(G, w, depth), lambda: f"{format_word(w)} at depth {depth}")
    ctx.record_tally("word sections agree with portrait evaluation", oracle)


# Theta


@suite(SuiteName.theta)
def theta_suite(ctx: SuiteContext) -> None:
    G = ctx.group
    if not G.normalized:
        ctx.skip("length reduction", "e_11 != 1; normalize the tuple first")
        return
    if spinal.in_family_E(G.E):
        ctx.skip("length reduction", "tuple lies in the excluded family")
        return

    rng = ctx.rng("derived")
    cap = ctx.caps.bfs_step_cap
    reached, closure, motivation = Tally(), Tally(), Tally()
    for index in range(ctx.caps.theta_samples):
        length = rng.randint(2, ctx.caps.theta_max_length)
        z = sampling.random_derived_word(G, length, rng, ctx.caps.retry_cap)
        witness = lambda: format_word(z)  # noqa: E731
        try:
            result, trace = spinal.reduce_commutator_length(G, z, cap)
        except ReductionFailed:
            reached.add(False, witness)
        else:
            reached.add(
                result.length in (0, 2)
                and spinal.replay(G, z, trace) == result
                and len(trace) <= cap,
                witness,
            )
        images = [spinal.theta1(G, z), spinal.theta2(G, z)]
        closure.add(all(words.exponents(t).is_zero for t in images), witness)
        if index < 20:
            pairs = spinal.theta_motivation(G, z, spinal.CERTIFY_DEPTH)
            motivation.add(all(left == right for _, left, right in pairs), witness)

    ctx.record(
        f"reductions reaching length 0 or 2 within {cap} steps",
        f"{reached.total - reached.violations}/{reached.total}",
        f"{reached.total}/{reached.total}",
        counterexample=reached.counterexample,
    )
    ctx.record_tally("theta images have zero exponent vector", closure)
    ctx.record_tally("theta maps match their defining section identities", motivation)


# Quotients


@suite(SuiteName.abelianization)
def abelianization_suite(ctx: SuiteContext) -> None:
    G = ctx.group
    # |G_n : G_n'| never decreases with n and never exceeds |G : G'| = p^(r+1)
    expected = G.p ** (G.r + 1)
    values: list[int] = []
    for depth in range(2, ctx.caps.quotient_depth + 1):
        Q = ctx.quotient(depth)
        if Q is None:
            break
        value = permgrp.index(Q, permgrp.derived_subgroup(Q))
        values.append(value)
        ctx.golden(depth, "abelianization", value)
        ctx.record(f"index bounded by p^(r+1) at depth {depth}", value, f"<= {expected}", ok=value <= expected)

    if not values:
        ctx.skip("abelianization index reaches p^(r+1)", "no depth within the caps")
        return
    ctx.record(
        "abelianization index reaches p^(r+1)",
        values,
        f"non-decreasing, ending at {expected}",
        ok=values == sorted(values) and values[-1] == expected,
    )


@suite(SuiteName.gamma3)
def gamma3_suite(ctx: SuiteContext) -> None:
    G = ctx.group
    if spinal.is_exceptional_G(G.E):
        ctx.skip("gamma_3 section product", "not claimed for the exceptional group")
        return
    Q3, Q2 = ctx.quotient(3), ctx.quotient(2)
    if Q3 is None or Q2 is None:
        return
    target = permgrp.gamma3(permgrp.level_stabilizer(Q3, 1))
    lower = permgrp.gamma3(Q2)
    ctx.note("order of gamma_3 of the level-1 stabilizer at depth 3", permgrp.order(target))
    ctx.note("order of gamma_3 at depth 2", permgrp.order(lower))
    tally = Tally()
    for h in lower.group.generators:
        for x in range(G.p):
            embedded = permgrp.embed_in_block(h, G.p, 3, x)
            tally.add(permgrp.contains(target, embedded), lambda h=h, x=x: f"{h.array_form} in block {x + 1}")
    ctx.record_tally("gamma_3 copies below level 1 lie in gamma_3 of the stabilizer", tally)


@suite(SuiteName.special_group)
def special_group_suite(ctx: SuiteContext) -> None:
    G = ctx.group
    if not spinal.is_exceptional_G(G.E):
        ctx.skip("index formulas", "the group is not the exceptional group")
        return
    p = G.p
    scale = pow(G.E.entry(1, 1), -1, p)
    generator = words.multiply(G.b(1, scale), G.a(-1))
    for depth in range(2, ctx.caps.quotient_depth + 1):
        Q = ctx.quotient(depth)
        if Q is None:
            break
        K = permgrp.normal_closure(Q, [Q.element(generator)])
        index_K = permgrp.index(Q, K)
        index_derived = permgrp.index(Q, permgrp.derived_subgroup(K))
        ctx.record(f"|G:K| at depth {depth}", index_K, p)
        ctx.record(f"|G:K'| at depth {depth}", index_derived, p ** (depth + 1))
        ctx.golden(depth, "index_K", index_K)
        ctx.golden(depth, "index_K_derived", index_derived)


@suite(SuiteName.transitivity)
def transitivity_suite(ctx: SuiteContext) -> None:
    G = ctx.group
    quotients = {}
    for depth in range(1, ctx.caps.quotient_depth + 1):
        Q = ctx.quotient(depth)
        if Q is None:
            break
        quotients[depth] = Q
        observed = [permgrp.level_transitive(Q, k) for k in range(1, depth + 1)]
        ctx.record(f"transitive on levels 1..{depth}", observed, [True] * depth)
        ctx.golden(depth, "order", permgrp.order(Q))

    for depth in range(2, max(quotients, default=1) + 1):
        sections_group = permgrp.fractal_sections_group(quotients[depth])
        ctx.record(
            f"first sections of stab(1) generate the depth-{depth - 1} quotient",
            permgrp.order(sections_group),
            permgrp.order(quotients[depth - 1]),
            ok=permgrp.same_group(sections_group, quotients[depth - 1]),
        )

    if len(quotients) < 2:
        return
    depth = max(quotients)
    Q = quotients[depth]
    rng = ctx.rng("blocks")
    tally = Tally()
    for _ in range(min(200, ctx.caps.oracle_samples)):
        w = sampling.random_stabilizer_word(rng, G, rng.randint(0, 6))
        observed = permgrp.block_sections(Q, Q.element(w))
        expected = [tree.to_leaf_perm(tree.eval_word(G, g, depth - 1)) for g in spinal.sections(G, w)]
        tally.add(observed == expected, lambda: format_word(w))
    ctx.record_tally("block sections agree with word sections", tally)


@suite(SuiteName.branch)
def branch_suite(ctx: SuiteContext) -> None:
    G = ctx.group
    if spinal.is_exceptional_G(G.E):
        ctx.skip("rigid stabilizers", "not claimed for the exceptional group")
        return
    Q3, Q2 = ctx.quotient(3), ctx.quotient(2)
    if Q3 is None or Q2 is None:
        return
    lower = permgrp.gamma3(Q2)
    tally = Tally()
    for x in range(G.p):
        rigid = permgrp.rigid_stabilizer(Q3, (x,))
        restricted = permgrp.restrict_to_vertex(rigid, (x,))
        tally.add(permgrp.is_subgroup(lower, restricted), f"vertex {x + 1}")
    ctx.record_tally("rigid vertex stabilizers contain gamma_3 of the depth-2 quotient", tally)

    index = permgrp.index(Q3, permgrp.rigid_level_stabilizer(Q3, 1))
    expected = golden_value(ctx.label, 3, "branch_index")
    if expected is None:
        ctx.note("index of the level-1 rigid stabilizer at depth 3", index)
    else:
        ctx.record("index of the level-1 rigid stabilizer at depth 3", index, expected)


# Normalization


@suite(SuiteName.normalize)
def normalize_suite(ctx: SuiteContext) -> None:
    E = ctx.group.E
    normalized, _ = normalize_defining_tuple(E)
    ctx.note("normalized tuple", normalized.as_lists())
    ctx.record("own tuple normalizes and certifies", spinal.check_normalization(E), True)

    for p, r in NORMALIZE_CASES:
        rng = ctx.rng(f"{p}-{r}")
        tally = Tally()
        for _ in range(ctx.caps.normalize_samples):
            T = sampling.random_tuple(rng, p, r)
            tally.add(spinal.check_normalization(T), lambda T=T: str(T.as_lists()))
        ctx.record_tally(f"random tuples with p={p}, r={r} normalize and certify", tally)


# Running


def resolve_suite(name: str | SuiteName) -> SuiteName:
    try:
        return SuiteName(name)
    except ValueError:
        raise UnknownSuite(
            f"unknown suite {name!r}; choose from {', '.join(s.value for s in SuiteName)}"
        ) from None


def run_suite(name: str | SuiteName, config: GroupConfig, seed: int, caps: Caps) -> SuiteReport:
    suite_name = resolve_suite(name)
    ctx = SuiteContext(suite_name, config, SpinalGroup(config.defining_tuple()), seed, caps)
    logger.info("running %s on %s (seed %d)", suite_name.value, ctx.label, seed)
    started = time.perf_counter()
    try:
        SUITES[suite_name](ctx)
    except SpinalError as exc:
        ctx.record("suite completed", f"{type(exc).__name__}: {exc.detail}", "no error", ok=False)
    except Exception as exc:
        logger.exception("suite %s crashed on %s", suite_name.value, ctx.label)
        ctx.record("suite completed", f"{type(exc).__name__}: {exc}", "no error", ok=False)
    report = SuiteReport(
        suite=suite_name,
        group=ctx.label,
        seed=seed,
        claim=CLAIM_ANCHORS[suite_name],
        checks=ctx.checks,
        wall_time_s=round(time.perf_counter() - started, 3),
    )
    logger.info(
        "%s on %s: %d checks, %d failed", suite_name.value, ctx.label, len(report.checks), len(report.failed)
    )
    return report


async def _gather(names, config, seed, caps) -> list[SuiteReport]:
    tasks = [asyncio.to_thread(run_suite, name, config, seed, caps) for name in names]
    return list(await asyncio.gather(*tasks))


def run_suites(names: list[str | SuiteName], config: GroupConfig, seed: int, caps: Caps) -> list[SuiteReport]:
    """Run independent suites concurrently; reports come back in request order."""
    resolved = [resolve_suite(name) for name in names]
    return asyncio.run(_gather(resolved, config, seed, caps))
