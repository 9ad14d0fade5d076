"""Arithmetic over Z/p for defining tuples.

Matrices are dense, row-major and reduced to ``0..p-1``. With ``p <= 31``
every product fits comfortably in ``int64``, so numpy does the row work.

Normalisation is a coordinate change in two steps: a conjugation ``f``
(rooted part ``x -> l*x``) making ``e_11 = 1``, followed by a change of
generators of ``<b_1, ..., b_r>`` that brings the rows into one of the
admissible patterns. Every row operation is recorded so the caller can certify the
result by conjugating portraits.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from sympy import isprime

from spinalkit.errors import InvalidTuple, NormalizationFailed

logger = logging.getLogger(__name__)

MIN_PRIME = 3
MAX_PRIME = 31

Matrix = tuple[tuple[int, ...], ...]


def validate_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise InvalidTuple(f"p must be an integer, got {p!r}")
    if not MIN_PRIME <= p <= MAX_PRIME:
        raise InvalidTuple(f"p must lie in {MIN_PRIME}..{MAX_PRIME}, got {p}")
    if not isprime(p):
        raise InvalidTuple(f"p must be an odd prime, got {p}")
    return p


def _as_array(matrix: Sequence[Sequence[int]], p: int) -> np.ndarray:
    rows = [list(row) for row in matrix]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64) % p


def _freeze(A: np.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in A)


def _row_reduce(A: np.ndarray, p: int, pivot_width: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan elimination over GF(p).

    Pivots are only searched for in the first ``pivot_width`` columns; row
    operations still apply to the full width, so an identity block appended
    on the right accumulates the left transform.
    """
    A = A.copy() % p
    m, n = A.shape
    if pivot_width is None:
        pivot_width = n
    pivots: list[int] = []
    row = 0
    for col in range(pivot_width):
        if row >= m:
            break
        nonzero = np.nonzero(A[row:, col])[0]
        if nonzero.size == 0:
            continue
        found = row + int(nonzero[0])
        if found != row:
            A[[row, found]] = A[[found, row]]
        A[row] = (A[row] * pow(int(A[row, col]), -1, p)) % p
        for other in range(m):
            if other != row and A[other, col]:
                A[other] = (A[other] - A[other, col] * A[row]) % p
        pivots.append(col)
        row += 1
    return A, pivots


def rref(matrix: Sequence[Sequence[int]], p: int) -> Matrix:
    """Reduced row-echelon form of ``matrix`` over Z/p."""
    A = _as_array(matrix, p)
    if A.size == 0:
        return _freeze(A)
    R, _ = _row_reduce(A, p)
    return _freeze(R)


def rank(matrix: Sequence[Sequence[int]], p: int) -> int:
    A = _as_array(matrix, p)
    if A.size == 0:
        return 0
    _, pivots = _row_reduce(A, p)
    return len(pivots)


def rows_independent(p: int, rows: Sequence[Sequence[int]]) -> bool:
    return rank(rows, p) == len(rows)


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], p: int) -> Matrix:
    return _freeze((_as_array(A, p) @ _as_array(B, p)) % p)


@dataclass(frozen=True)
class DefiningTuple:
    """The r x (p-1) matrix E of defining vectors over Z/p."""

    p: int
    rows: Matrix

    def __post_init__(self):
        validate_prime(self.p)
        if not 1 <= len(self.rows) <= self.p - 1:
            raise InvalidTuple(f"need 1 <= r <= {self.p - 1} rows, got {len(self.rows)}")
        for row in self.rows:
            if len(row) != self.p - 1:
                raise InvalidTuple(f"row {list(row)} must have length {self.p - 1}")
            if any(not 0 <= e < self.p for e in row):
                raise InvalidTuple(f"row {list(row)} has entries outside 0..{self.p - 1}")
        if not rows_independent(self.p, self.rows):
            raise InvalidTuple(f"rows {[list(r) for r in self.rows]} are linearly dependent mod {self.p}")

    @classmethod
    def build(cls, p: int, rows: Sequence[Sequence[int]]) -> "DefiningTuple":
        validate_prime(p)
        return cls(p=p, rows=tuple(tuple(int(e) % p for e in row) for row in rows))

    @property
    def r(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """``e_{i,j}`` with 1-based indices as in the defining recursion."""
        return self.rows[i - 1][j - 1]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


@dataclass(frozen=True)
class CoordinateChange:
    """Witness of a normalisation.

    ``power`` is the exponent applied to ``b_1`` before the conjugation,
    ``k`` the coordinate with ``power * e_{1,k} = k`` and ``l = k^{-1}``.
    The conjugating automorphism has rooted part ``x -> l*x`` and every
    first-level section equal to itself. ``generator_matrix`` M satisfies
    ``E~ = M . T(E)`` where T is the row transform induced by the conjugation.
    """

    p: int
    power: int
    k: int
    l: int
    generator_matrix: Matrix

    @property
    def root_permutation(self) -> tuple[int, ...]:
        """0-based one-line images of ``x -> l*x`` on the vertices ``1..p``."""
        return tuple((self.l * (x + 1) - 1) % self.p for x in range(self.p))

    @property
    def is_identity(self) -> bool:
        r = len(self.generator_matrix)
        identity = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        return self.l == 1 and self.generator_matrix == identity

    @classmethod
    def identity(cls, p: int, r: int) -> "CoordinateChange":
        matrix = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        return cls(p=p, power=1, k=1, l=1, generator_matrix=matrix)


def conjugation_transform(row: Sequence[int], k: int, l: int, p: int) -> tuple[int, ...]:
    """Defining vector of ``b^f`` where ``f`` has rooted part ``x -> l*x``."""
    return tuple((l * row[(k * x) % p - 1]) % p for x in range(1, p))


def _leading_power_choice(row: Sequence[int], p: int) -> tuple[int, int]:
    for power in range(1, p):
        scaled = [(power * e) % p for e in row]
        for k in range(1, p):
            if scaled[k - 1] == k:
                return power, k
    raise InvalidTuple("first defining vector is zero")


def is_nondegenerate(row: Sequence[int], p: int) -> bool:
    """Some k in 2..p-2 has e_{k-1} e_{k+1} != e_k^2 (mod p)."""
    return any(
        (row[k - 2] * row[k] - row[k - 1] ** 2) % p != 0
        for k in range(2, p - 1)
    )


def _special_pair(p: int) -> Matrix:
    first = (1,) + (0,) * (p - 2)
    second = (1,) + (0,) * (p - 3) + (1,)
    return (first, second)


def satisfies_normal_form(E: DefiningTuple) -> bool:
    p, rows = E.p, E.rows
    if rows[0][0] != 1:
        return False
    if E.r == 1:
        return True
    if any(row[0] != 1 for row in rows):
        return False
    if E.r == 2 and p == 3:
        return rows == ((1, 0), (1, 1))
    if E.r == 2:
        return all(is_nondegenerate(row, p) for row in rows) or rows == _special_pair(p)
    return all(is_nondegenerate(row, p) for row in rows)


def apply_coordinate_change(E: DefiningTuple, witness: CoordinateChange) -> DefiningTuple:
    transformed = [conjugation_transform(row, witness.k, witness.l, E.p) for row in E.rows]
    return DefiningTuple.build(E.p, mat_mul(witness.generator_matrix, transformed, E.p))


def _pair_rows(W: np.ndarray, y: int, z: int, p: int) -> np.ndarray:
    return np.stack([(W[0] + y * W[1]) % p, (W[0] + z * W[1]) % p])


def _normalize_two_rows(W: np.ndarray, p: int, width: int) -> np.ndarray:
    # W is in RREF with pivot in column 0; rows become R1 + y R2, R1 + z R2.
    if p == 3:
        return _pair_rows(W, 0, 1, p)
    special = _special_pair(p)
    for y in range(p):
        for z in range(y + 1, p):
            candidate = _pair_rows(W, y, z, p)
            left = _freeze(candidate[:, :width])
            if all(is_nondegenerate(row, p) for row in left) or left == special:
                logger.debug("pair parameters y=%d z=%d", y, z)
                return candidate
    raise NormalizationFailed(f"no admissible (y, z) for rows {_freeze(W[:, :width])}")


def _normalize_many_rows(W: np.ndarray, p: int, width: int) -> np.ndarray:
    r = W.shape[0]
    W = W.copy()
    for i in range(1, r):
        W[i] = (W[i] + W[0]) % p

    last_changed = False
    if not is_nondegenerate(W[r - 1, :width], p):
        W[r - 1] = (W[r - 1] - W[1] + W[0]) % p
        last_changed = True
    if not is_nondegenerate(W[0, :width], p):
        if r == 3 and last_changed:
            W[0] = (2 * W[0] - W[2]) % p
        else:
            W[0] = (W[0] + W[1] - W[2]) % p
    return W


def normalize_defining_tuple(E: DefiningTuple) -> tuple[DefiningTuple, CoordinateChange]:
    """Return an equivalent tuple in normal form together with its witness."""
    p, r, width = E.p, E.r, E.p - 1
    power, k = _leading_power_choice(E.rows[0], p)
    l = pow(k, -1, p)

    transformed = np.asarray(
        [conjugation_transform(row, k, l, p) for row in E.rows], dtype=np.int64
    )
    W = np.concatenate([transformed, np.eye(r, dtype=np.int64)], axis=1)
    W[0] = (W[0] * power) % p

    if r >= 2:
        W, pivots = _row_reduce(W, p, pivot_width=width)
        if not pivots or pivots[0] != 0:
            raise NormalizationFailed(f"column 1 vanished after conjugation for {E.rows}")
        if r == 2:
            W = _normalize_two_rows(W, p, width)
        else:
            W = _normalize_many_rows(W, p, width)

    normalized = DefiningTuple.build(p, _freeze(W[:, :width]))
    witness = CoordinateChange(
        p=p, power=power, k=k, l=l, generator_matrix=_freeze(W[:, width:])
    )
    if not satisfies_normal_form(normalized):
        raise NormalizationFailed(
            f"normal form not reached for {E.as_lists()}: got {normalized.as_lists()}"
        )
    logger.debug("normalized %s -> %s (k=%d, l=%d, power=%d)", E.rows, normalized.rows, k, l, power)
    return normalized, witness
