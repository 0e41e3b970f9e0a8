"""GF(2^8) arithmetic and a systematic MDS erasure codec.

Elements are plain ints in ``range(256)``. Reduction polynomial is
x^8 + x^4 + x^3 + x^2 + 1 (0x11D), for which 0x02 is primitive.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

POLY = 0x11D
FIELD_SIZE = 256
ORDER = FIELD_SIZE - 1

EXP = [0] * (2 * ORDER)
LOG = [0] * FIELD_SIZE


def _init_tables():
    x = 1
    for i in range(ORDER):
        EXP[i] = x
        LOG[x] = i
        x <<= 1
        if x & FIELD_SIZE:
            x ^= POLY
    for i in range(ORDER, 2 * ORDER):
        EXP[i] = EXP[i - ORDER]


_init_tables()


def _check(a: int) -> int:
    if not 0 <= a < FIELD_SIZE:
        raise ValueError(f"{a!r} is not a GF(256) element")
    return a


def gf_add(a: int, b: int) -> int:
    return _check(a) ^ _check(b)


gf_sub = gf_add


def gf_mul(a: int, b: int) -> int:
    _check(a)
    _check(b)
    if a == 0 or b == 0:
        return 0
    return EXP[LOG[a] + LOG[b]]


def gf_inv(a: int) -> int:
    if _check(a) == 0:
        raise ZeroDivisionError("0 has no inverse in GF(256)")
    return EXP[ORDER - LOG[a]]


def gf_div(a: int, b: int) -> int:
    return gf_mul(a, gf_inv(b))


def gf_pow(a: int, e: int) -> int:
    if e == 0:
        return 1
    if _check(a) == 0:
        return 0
    return EXP[(LOG[a] * e) % ORDER]


def dot(row: Sequence[int], vec: Sequence[int]) -> int:
    """Inner product over GF(256); no range checks (hot path)."""
    acc = 0
    for a, b in zip(row, vec):
        if a and b:
            acc ^= EXP[LOG[a] + LOG[b]]
    return acc


def mat_inv(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Gauss-Jordan inverse of a square matrix. Raises ValueError if singular."""
    size = len(m)
    aug = [list(row) + [int(i == j) for j in range(size)] for i, row in enumerate(m)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = gf_inv(aug[col][col])
        aug[col] = [gf_mul(v, inv) for v in aug[col]]
        for r in range(size):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [v ^ gf_mul(f, p) for v, p in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


class MdsCodec:
    """Systematic (n, k) MDS code over GF(256).

    The generator is ``[I_k ; P]`` with P a column-scaled Cauchy matrix.
    Columns are scaled so the first parity row is all ones, which keeps every
    square submatrix of P nonsingular (hence MDS) and makes the (3, 2) code
    store ``(x, y, x + y)``.

    Positions are 1-based.
    """

    def __init__(self, n: int, k: int):
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
        if n > ORDER:
            raise ValueError(f"n={n} exceeds the GF(256) limit of {ORDER}")
        self.n = n
        self.k = k
        self.generator = self._build_generator()

    def __repr__(self):
        return f"MdsCodec(n={self.n}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, MdsCodec) and (self.n, self.k) == (other.n, other.k)

    def __hash__(self):
        return hash((MdsCodec, self.n, self.k))

    def _build_generator(self) -> tuple[tuple[int, ...], ...]:
        n, k = self.n, self.k
        rows = [tuple(int(i == j) for j in range(k)) for i in range(k)]
        m = n - k
        # x_i = i, y_j = m + j: all distinct, so x_i + y_j != 0
        cauchy = [[gf_inv(i ^ (m + j)) for j in range(k)] for i in range(m)]
        if m:
            scale = [gf_inv(c) for c in cauchy[0]]
            for i in range(m):
                rows.append(tuple(gf_mul(c, s) for c, s in zip(cauchy[i], scale)))
        return tuple(rows)

    def row(self, position: int) -> tuple[int, ...]:
        return self.generator[position - 1]

    def encode(self, message: Sequence[int]) -> list[int]:
        if len(message) != self.k:
            raise ValueError(f"message has {len(message)} symbols, codec expects {self.k}")
        for s in message:
            _check(s)
        return list(message) + [dot(r, message) for r in self.generator[self.k:]]

    def _positions(self, positions: Iterable[int]) -> tuple[int, ...]:
        positions = tuple(positions)
        if len(positions) != self.k:
            raise ValueError(f"need exactly {self.k} symbols, got {len(positions)}")
        if len(set(positions)) != len(positions):
            raise ValueError(f"repeated positions in {positions}")
        bad = [p for p in positions if not 1 <= p <= self.n]
        if bad:
            raise ValueError(f"positions {bad} outside [1, {self.n}]")
        return positions

    def decode(self, symbols) -> list[int]:
        """Recover the message from k ``(position, symbol)`` pairs (or a dict)."""
        pairs = list(symbols.items()) if isinstance(symbols, dict) else list(symbols)
        positions = self._positions(p for p, _ in pairs)
        values = [_check(v) for _, v in pairs]
        inv = _decoding_matrix(self, tuple(sorted(positions)))
        order = sorted(range(len(positions)), key=positions.__getitem__)
        values = [values[i] for i in order]
        return [dot(r, values) for r in inv]


@lru_cache(maxsize=4096)
def _decoding_matrix(codec: MdsCodec, positions: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    sub = [codec.row(p) for p in positions]
    return tuple(tuple(r) for r in mat_inv(sub))


def mds_encode(codec: MdsCodec, message: Sequence[int]) -> list[int]:
    return codec.encode(message)


def mds_decode(codec: MdsCodec, symbols) -> list[int]:
    return codec.decode(symbols)
