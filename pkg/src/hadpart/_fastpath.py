"""Compiled kernel for bulk verification of one level from the level below.

The kernel re-derives each matrix's packed rows from the previous level's
row table and a flat index, then checks the claimed properties directly:
every row pair's XOR popcount must be m/2, every row must have bit 0
clear, and every row's canonical index must be fresh in the coverage
bitmap.  Witness buffers are filled up to their capacity; the returned
counts keep growing past it.

Runs with the GIL released so callers can fan contiguous flat ranges out
over threads, one private bitmap per thread.
"""

import numpy as np
from numba import njit, uint64

WITNESS_CAP = 64


@njit(cache=True, nogil=True)
def verify_range(prev, shift_bits, j_bits, lo, hi, bitmap, orth_w, canon_w, dup_w):
    """Check flat indices [lo, hi); returns totals past the witness caps.

    prev: (family, half_m) uint64 row table of the previous level.
    bitmap: uint8 coverage array, one bit per canonical vector.
    orth_w: int64 (cap, 3) rows (flat, r, s); canon_w: int64 (cap, 2)
    rows (flat, r); dup_w: uint64 (cap,) duplicated row bit patterns.
    """
    half_m = prev.shape[1]
    m = 2 * half_m
    hshift = uint64(half_m)
    hmask = (uint64(1) << hshift) - uint64(1)
    target = uint64(half_m)
    kmask = half_m - 1
    jmask = (1 << j_bits) - 1

    rows = np.empty(m, np.uint64)
    nmat = 0
    n_orth = 0
    n_canon = 0
    n_dup = 0

    for flat in range(lo, hi):
        k = flat & kmask
        sub = flat >> shift_bits
        j = sub & jmask
        i = sub >> j_bits

        for r in range(half_m):
            a = prev[i, r]
            b = prev[j, (r - k) & kmask]
            rows[r] = a | (b << hshift)
            rows[half_m + r] = a | ((b ^ hmask) << hshift)

        for r in range(m):
            w = rows[r]
            if w & uint64(1):
                if n_canon < canon_w.shape[0]:
                    canon_w[n_canon, 0] = flat
                    canon_w[n_canon, 1] = r
                n_canon += 1
            idx = w >> uint64(1)
            byte = idx >> uint64(3)
            bit = uint64(1) << (idx & uint64(7))
            prev_byte = uint64(bitmap[byte])
            if prev_byte & bit:
                if n_dup < dup_w.shape[0]:
                    dup_w[n_dup] = w
                n_dup += 1
            else:
                bitmap[byte] = np.uint8(prev_byte | bit)

        for r in range(m):
            x = rows[r]
            for s in range(r + 1, m):
                v = x ^ rows[s]
                v = v - ((v >> uint64(1)) & uint64(0x5555555555555555))
                v = (v & uint64(0x3333333333333333)) + (
                    (v >> uint64(2)) & uint64(0x3333333333333333)
                )
                v = (v + (v >> uint64(4))) & uint64(0x0F0F0F0F0F0F0F0F)
                v = (v * uint64(0x0101010101010101)) >> uint64(56)
                if v != target:
                    if n_orth < orth_w.shape[0]:
                        orth_w[n_orth, 0] = flat
                        orth_w[n_orth, 1] = r
                        orth_w[n_orth, 2] = s
                    n_orth += 1

        nmat += 1

    return nmat, nmat * m, n_orth, n_canon, n_dup


def make_witness_buffers():
    return (
        np.zeros((WITNESS_CAP, 3), np.int64),
        np.zeros((WITNESS_CAP, 2), np.int64),
        np.zeros(WITNESS_CAP, np.uint64),
    )
