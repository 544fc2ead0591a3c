"""Bit-packed ±1 vectors and sign-class canonicalization.

A vector of length m (always a power of two) whose entries are all +1 or
-1 is stored as a single Python integer: bit t is set exactly when
coordinate t equals -1, and bit 0 is the first coordinate.  Serialized
form is ceil(m/64) little-endian 64-bit words, which is the same layout
an integer's little-endian bytes give for free.

Vectors come in sign pairs {x, -x}; the canonical representative of a
pair is the one whose first coordinate is +1 (bit 0 clear).  With this
convention the 2^(m-1) canonical vectors are exactly the even bit
patterns, so enumerating them is plain counting.

Inner products never touch individual coordinates: agreeing coordinates
contribute +1 and disagreeing ones -1, so <x, y> = m - 2 * popcount(x ^ y).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    IllegalCharacter,
    NonPowerOfTwoLength,
)

# Largest m for which enumerate_canonical will stream all 2^(m-1) vectors.
FULL_ENUMERATION_CAP = 32

WORD_BITS = 64


@dataclass(frozen=True)
class Dimension:
    """Ambient dimension m = 2^n, carried as the exponent n."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise NonPowerOfTwoLength(f"dimension exponent must be >= 0, got {self.n}")

    @property
    def m(self) -> int:
        """Number of coordinates."""
        return 1 << self.n

    @property
    def words(self) -> int:
        """64-bit words needed to hold one packed vector."""
        return (self.m + WORD_BITS - 1) // WORD_BITS

    @classmethod
    def from_length(cls, m: int) -> Dimension:
        if m < 1 or m & (m - 1):
            raise NonPowerOfTwoLength(f"vector length {m} is not a power of two")
        return cls(m.bit_length() - 1)

    def __repr__(self) -> str:
        return f"Dimension(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class HadamardVector:
    """±1 vector packed as a bit mask (bit t set <=> coordinate t is -1)."""

    dim: Dimension
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.dim.m):
            raise ValueError(
                f"bit pattern {self.bits:#x} does not fit {self.dim.m} coordinates"
            )

    def coordinate(self, t: int) -> int:
        return -1 if (self.bits >> t) & 1 else 1

    def coordinates(self) -> tuple[int, ...]:
        return tuple(self.coordinate(t) for t in range(self.dim.m))

    def to_words(self) -> bytes:
        """Little-endian 64-bit word serialization, padding bits zero."""
        return self.bits.to_bytes(self.dim.words * 8, "little")

    @classmethod
    def from_words(cls, dim: Dimension, data: bytes) -> HadamardVector:
        return cls(dim, int.from_bytes(data, "little"))

    def __neg__(self) -> HadamardVector:
        return HadamardVector(self.dim, self.bits ^ ((1 << self.dim.m) - 1))

    def __str__(self) -> str:
        return format_vector(self)


@dataclass(frozen=True)
class CanonicalVector:
    """The member of a sign pair {x, -x} whose first coordinate is +1."""

    inner: HadamardVector

    def __post_init__(self):
        if self.inner.bits & 1:
            raise ValueError("canonical vector must have first coordinate +1")

    @property
    def dim(self) -> Dimension:
        return self.inner.dim

    @property
    def bits(self) -> int:
        return self.inner.bits

    def __str__(self) -> str:
        return format_vector(self.inner)


def parse_vector(text: str) -> HadamardVector:
    """Parse a '+'/'-' string, one character per coordinate."""
    dim = Dimension.from_length(len(text))
    bits = 0
    for t, ch in enumerate(text):
        if ch == "-":
            bits |= 1 << t
        elif ch != "+":
            raise IllegalCharacter(ch, t)
    return HadamardVector(dim, bits)


def format_vector(v: HadamardVector) -> str:
    """Inverse of parse_vector."""
    bits = v.bits
    return "".join("-" if (bits >> t) & 1 else "+" for t in range(v.dim.m))


def canonicalize(v: HadamardVector) -> tuple[CanonicalVector, int]:
    """Return (representative, sign) with v == sign * representative."""
    if v.bits & 1:
        return CanonicalVector(-v), -1
    return CanonicalVector(v), 1


def inner_product(x: HadamardVector, y: HadamardVector) -> int:
    """Dot product of two ±1 vectors via the popcount identity."""
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions differ: {x.dim.m} vs {y.dim.m}")
    return x.dim.m - 2 * (x.bits ^ y.bits).bit_count()


def enumerate_canonical(dim: Dimension) -> Iterator[CanonicalVector]:
    """Yield all 2^(m-1) canonical vectors in increasing bit-pattern order."""
    if dim.m > FULL_ENUMERATION_CAP:
        raise DimensionTooLarge(
            f"enumeration capped at m <= {FULL_ENUMERATION_CAP}, got m = {dim.m}"
        )
    for pattern in range(1 << (dim.m - 1)):
        yield CanonicalVector(HadamardVector(dim, pattern << 1))


def split_halves(v: HadamardVector) -> tuple[HadamardVector, HadamardVector]:
    """Split into (coordinates 0..m/2-1, coordinates m/2..m-1)."""
    if v.dim.n == 0:
        raise DimensionMismatch("cannot split a 1-dimensional vector")
    half = Dimension(v.dim.n - 1)
    hm = half.m
    return (
        HadamardVector(half, v.bits & ((1 << hm) - 1)),
        HadamardVector(half, v.bits >> hm),
    )


def concat_halves(u: HadamardVector, w: HadamardVector) -> HadamardVector:
    """Concatenate two equal-length vectors; u supplies the low coordinates."""
    if u.dim != w.dim:
        raise DimensionMismatch(f"dimensions differ: {u.dim.m} vs {w.dim.m}")
    whole = Dimension(u.dim.n + 1)
    return HadamardVector(whole, u.bits | (w.bits << u.dim.m))
