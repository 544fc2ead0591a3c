"""Recursive construction of the partition family.

Level n holds 2^E(n) matrices of size 2^n x 2^n, E(n) = 2^n - n - 1, and
together their rows cover every canonical ±1 vector of length 2^n exactly
once.  Level n+1 matrices are built from an ordered pair of level-n
matrices and a cyclic row shift: put the first matrix next to the shifted
second one, then stack that strip on top of a copy with the right half
negated.  The construction bottoms out at level 2 with two fixed 4x4
matrices.

A matrix of the family is addressed either hierarchically, as the triple
(i, j, k) of its two parents and the shift, or by a flat integer that
mixed-radix-encodes the whole triple tree.  Flat indices are only defined
through level 6, where E(6) = 57 still fits a 64-bit word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    LevelTooLargeForFlatIndex,
    LevelTooLargeForFullIteration,
    NegativeLevel,
    ShiftOutOfRange,
)
from .vectors import Dimension, HadamardVector, concat_halves, parse_vector

BASE_LEVEL = 2
FLAT_LEVEL_CAP = 6
ITERATION_LEVEL_CAP = 5

# Matrices cached by matrix_by_address (level 4 has 2048, the rest are tiny).
_ADDRESS_CACHE_LEVEL_CAP = 4
_ADDRESS_CACHE_SIZE = 4 * 1024

# iter_partition materializes the previous level only below this budget.
_FAMILY_CACHE_BYTES = 64 * 2**20

_BASE_ROWS = {
    0: ("+",),
    1: ("++", "+-"),
}
_A_ROWS = ("++++", "++--", "+-+-", "+--+")
_B_ROWS = ("+++-", "++-+", "+-++", "+---")


@dataclass(frozen=True)
class HadamardMatrix:
    """Square ±1 matrix held as an ordered tuple of packed row vectors.

    Everything this module produces has pairwise-orthogonal canonical
    rows; the constructor checks shape only, so the verifier can also
    carry candidate matrices that fail those properties.
    """

    dim: Dimension
    rows: tuple[HadamardVector, ...]

    def __post_init__(self):
        if len(self.rows) != self.dim.m:
            raise DimensionMismatch(
                f"expected {self.dim.m} rows, got {len(self.rows)}"
            )
        for v in self.rows:
            if v.dim != self.dim:
                raise DimensionMismatch(
                    f"row length {v.dim.m} in a {self.dim.m}x{self.dim.m} matrix"
                )

    def row(self, r: int) -> HadamardVector:
        return self.rows[r]

    def row_bits(self) -> tuple[int, ...]:
        return tuple(v.bits for v in self.rows)

    @classmethod
    def from_strings(cls, rows: tuple[str, ...] | list[str]) -> HadamardMatrix:
        parsed = tuple(parse_vector(r) for r in rows)
        return cls(parsed[0].dim, parsed)


@dataclass(frozen=True)
class HalfPair:
    """Two same-size matrices read side by side as an m x 2m strip."""

    left: HadamardMatrix
    right: HadamardMatrix

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise DimensionMismatch("half pair sides must have equal dimensions")


@dataclass(frozen=True)
class PartitionAddress:
    """Position of one matrix in the family at some level.

    Levels 0..2 are addressed by a small base index; higher levels by the
    parent pair (i, j) one level down plus the row shift k.
    """

    level: int
    base: int | None = None
    i: PartitionAddress | None = None
    j: PartitionAddress | None = None
    k: int | None = None

    def __post_init__(self):
        if self.level < 0:
            raise NegativeLevel(f"level must be >= 0, got {self.level}")
        if self.level <= BASE_LEVEL:
            if self.base is None or not (self.i is self.j is self.k is None):
                raise IndexOutOfRange(f"level {self.level} takes a base index only")
            if not 0 <= self.base < family_size(self.level):
                raise IndexOutOfRange(
                    f"base index {self.base} out of range at level {self.level}"
                )
        else:
            if self.base is not None or None in (self.i, self.j, self.k):
                raise IndexOutOfRange(f"level {self.level} takes an (i, j, k) triple")
            if self.i.level != self.level - 1 or self.j.level != self.level - 1:
                raise IndexOutOfRange("parent addresses must sit one level down")
            if not 0 <= self.k < (1 << (self.level - 1)):
                raise ShiftOutOfRange(
                    f"shift {self.k} out of range at level {self.level}"
                )

    def to_flat(self) -> int:
        return encode_address(self)

    @classmethod
    def from_flat(cls, n: int, flat: int) -> PartitionAddress:
        return decode_address(n, flat)


def count_exponent(n: int) -> int:
    """E(n) = 2^n - n - 1; the level-n family holds 2^E(n) matrices."""
    if n < 0:
        raise NegativeLevel(f"level must be >= 0, got {n}")
    return (1 << n) - n - 1


def family_size(n: int) -> int:
    return 1 << count_exponent(n)


def base_partition() -> list[HadamardMatrix]:
    """The two fixed 4x4 matrices the recursion is anchored on."""
    return [HadamardMatrix.from_strings(_A_ROWS), HadamardMatrix.from_strings(_B_ROWS)]


def _base_family(level: int) -> list[HadamardMatrix]:
    if level == BASE_LEVEL:
        return base_partition()
    return [HadamardMatrix.from_strings(_BASE_ROWS[level])]


def shift_matrix(matrix: HadamardMatrix, k: int) -> HadamardMatrix:
    """Cyclically move rows down k places (row r comes from row r-k mod m)."""
    m = matrix.dim.m
    if not 0 <= k < m:
        raise ShiftOutOfRange(f"shift {k} out of range for {m} rows")
    if k == 0:
        return matrix
    rows = tuple(matrix.rows[(r - k) % m] for r in range(m))
    return HadamardMatrix(matrix.dim, rows)


def pair_matrices(ai: HadamardMatrix, aj: HadamardMatrix, k: int) -> HalfPair:
    """Form the strip [ai | aj shifted down k rows]."""
    if ai.dim != aj.dim:
        raise DimensionMismatch("paired matrices must have equal dimensions")
    return HalfPair(ai, shift_matrix(aj, k))


def double_matrix(pair: HalfPair) -> HadamardMatrix:
    """Stack [left | right] on top of [left | -right], doubling the size."""
    m = pair.left.dim.m
    dim2 = Dimension(pair.left.dim.n + 1)
    rows = [concat_halves(pair.left.rows[r], pair.right.rows[r]) for r in range(m)]
    rows += [concat_halves(pair.left.rows[r], -pair.right.rows[r]) for r in range(m)]
    return HadamardMatrix(dim2, tuple(rows))


def encode_address(addr: PartitionAddress) -> int:
    """Flatten an address to its mixed-radix integer."""
    if addr.level > FLAT_LEVEL_CAP:
        raise LevelTooLargeForFlatIndex(
            f"flat indices stop at level {FLAT_LEVEL_CAP}, got {addr.level}"
        )
    if addr.level <= BASE_LEVEL:
        return addr.base
    c = count_exponent(addr.level - 1)
    sub = (encode_address(addr.i) << c) | encode_address(addr.j)
    return (sub << (addr.level - 1)) | addr.k


def decode_address(n: int, flat: int) -> PartitionAddress:
    """Inverse of encode_address: peel k, then j, then i."""
    if n < 0:
        raise NegativeLevel(f"level must be >= 0, got {n}")
    if n > FLAT_LEVEL_CAP:
        raise LevelTooLargeForFlatIndex(
            f"flat indices stop at level {FLAT_LEVEL_CAP}, got {n}"
        )
    if not 0 <= flat < family_size(n):
        raise IndexOutOfRange(f"flat index {flat} out of range at level {n}")
    if n <= BASE_LEVEL:
        return PartitionAddress(level=n, base=flat)
    shift_bits = n - 1
    k = flat & ((1 << shift_bits) - 1)
    sub = flat >> shift_bits
    c = count_exponent(n - 1)
    j = sub & ((1 << c) - 1)
    i = sub >> c
    return PartitionAddress(
        level=n, i=decode_address(n - 1, i), j=decode_address(n - 1, j), k=k
    )


def _raw_vector(dim: Dimension, bits: int) -> HadamardVector:
    # internal fast constructor: bits already known to fit dim
    v = object.__new__(HadamardVector)
    object.__setattr__(v, "dim", dim)
    object.__setattr__(v, "bits", bits)
    return v


def _raw_matrix(dim: Dimension, rows: tuple) -> HadamardMatrix:
    m = object.__new__(HadamardMatrix)
    object.__setattr__(m, "dim", dim)
    object.__setattr__(m, "rows", rows)
    return m


def _assemble(left: HadamardMatrix, right: HadamardMatrix, k: int) -> HadamardMatrix:
    """double_matrix(pair_matrices(left, right, k)) without the
    intermediate objects; the hot path for random access and iteration."""
    half_m = left.dim.m
    dim2 = Dimension(left.dim.n + 1)
    mask = (1 << half_m) - 1
    lbits = [v.bits for v in left.rows]
    rbits = [v.bits for v in right.rows]
    top = []
    bottom = []
    for r in range(half_m):
        lo = lbits[r]
        hi = rbits[(r - k) % half_m]
        top.append(_raw_vector(dim2, lo | (hi << half_m)))
        bottom.append(_raw_vector(dim2, lo | ((hi ^ mask) << half_m)))
    return _raw_matrix(dim2, tuple(top + bottom))


@lru_cache(maxsize=_ADDRESS_CACHE_SIZE)
def _cached_matrix(addr: PartitionAddress) -> HadamardMatrix:
    return _build_matrix(addr)


def _build_matrix(addr: PartitionAddress) -> HadamardMatrix:
    if addr.level <= BASE_LEVEL:
        return _base_family(addr.level)[addr.base]
    return _assemble(
        matrix_by_address(addr.i), matrix_by_address(addr.j), addr.k
    )


def matrix_by_address(addr: PartitionAddress) -> HadamardMatrix:
    """Build the matrix at an address; deterministic including row order.

    Matrices up to level 4 (2048 of them, a few hundred KiB) are memoized,
    so random access at level 5 or 6 only assembles the top of the tree.
    """
    if addr.level <= _ADDRESS_CACHE_LEVEL_CAP:
        return _cached_matrix(addr)
    return _build_matrix(addr)


def iter_partition(n: int) -> Iterator[HadamardMatrix]:
    """Yield the whole level-n family in flat-index order."""
    if n < 0:
        raise NegativeLevel(f"level must be >= 0, got {n}")
    if n > ITERATION_LEVEL_CAP:
        raise LevelTooLargeForFullIteration(
            f"full iteration stops at level {ITERATION_LEVEL_CAP}, got {n}"
        )
    if n <= BASE_LEVEL:
        yield from _base_family(n)
        return

    # The previous family in full costs family_size * m/8 bytes of row
    # payload; cache it when that is cheap (always true through level 4).
    prev_bytes = family_size(n - 1) * (1 << (n - 1)) * 8
    if prev_bytes <= _FAMILY_CACHE_BYTES:
        prev = list(iter_partition(n - 1))
        half = 1 << (n - 1)
        for ai in prev:
            for aj in prev:
                for k in range(half):
                    yield _assemble(ai, aj, k)
    else:
        for flat in range(family_size(n)):
            yield matrix_by_address(decode_address(n, flat))
