"""Inverse of the construction: find where a vector's sign class lives.

Each doubled row is a pair of half-length rows, with the right half
negated in the bottom block.  Reading that backwards: the left half of a
canonical vector pins down the first parent and the row, the right half
(after canonicalizing it) pins down the second parent and, through the
shift relation, k; whether the right half needed a sign flip selects the
top or bottom block.  The recursion ends in an eight-entry table at the
4-dimensional base.
"""

from __future__ import annotations

from dataclasses import dataclass

from .construction import BASE_LEVEL, PartitionAddress, _base_family
from .vectors import HadamardVector, canonicalize

__all__ = ["Location", "locate_vector"]


@dataclass(frozen=True)
class Location:
    """Where a sign class appears: matrix address, row, and the sign that
    maps the queried vector onto the stored canonical row."""

    addr: PartitionAddress
    row: int
    sign: int


def _base_tables() -> dict[int, dict[int, tuple[int, int]]]:
    tables: dict[int, dict[int, tuple[int, int]]] = {}
    for level in range(BASE_LEVEL + 1):
        table: dict[int, tuple[int, int]] = {}
        for index, matrix in enumerate(_base_family(level)):
            for r, row in enumerate(matrix.rows):
                table[row.bits] = (index, r)
        tables[level] = table
    return tables


_BASE_TABLES = _base_tables()


def _locate_canonical(dim_n: int, bits: int) -> tuple[PartitionAddress, int]:
    if dim_n <= BASE_LEVEL:
        index, row = _BASE_TABLES[dim_n][bits]
        return PartitionAddress(level=dim_n, base=index), row

    half_m = 1 << (dim_n - 1)
    left = bits & ((1 << half_m) - 1)
    right = bits >> half_m

    i_addr, r = _locate_canonical(dim_n - 1, left)
    if right & 1:
        right ^= (1 << half_m) - 1
        bottom = True
    else:
        bottom = False
    j_addr, r_j = _locate_canonical(dim_n - 1, right)

    k = (r - r_j) % half_m
    row = r + half_m if bottom else r
    return PartitionAddress(level=dim_n, i=i_addr, j=j_addr, k=k), row


def locate_vector(v: HadamardVector) -> Location:
    """Map a vector to the unique (address, row, sign) holding its sign class.

    Guarantee: building the matrix at the returned address and reading the
    returned row gives back canonicalize(v), and sign is the
    canonicalization sign.
    """
    canon, sign = canonicalize(v)
    addr, row = _locate_canonical(v.dim.n, canon.bits)
    return Location(addr, row, sign)
