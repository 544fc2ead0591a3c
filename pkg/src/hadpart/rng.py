"""Deterministic 64-bit generator for sampled verification.

SplitMix64: the state advances by a fixed odd constant and each output is
a bit-mixed copy of the state.  The whole algorithm is the dozen lines
below, so a report produced with a given seed can be reproduced exactly
by any implementation, in any language, forever.

Reference constants from Steele, Lea and Vigna's public-domain version:
increment 0x9E3779B97F4A7C15, mix multipliers 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB, shifts 30/27/31.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_INCREMENT = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _INCREMENT) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def bits(self, nbits: int) -> int:
        """Low nbits of the next output; one output is consumed even for
        nbits == 0 so draw sequences stay aligned across callers."""
        if not 0 <= nbits <= 64:
            raise ValueError(f"nbits must be in 0..64, got {nbits}")
        return self.next_u64() & ((1 << nbits) - 1)
