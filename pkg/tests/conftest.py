"""Shared fixtures and independent oracles.

The oracles deliberately avoid the code paths they check: inner products
are recomputed by unpacking to ±1 integers and summing, orthogonality by
a numpy Gram matrix, coverage by a hash set.
"""

import os

import numpy as np
import pytest

from hadpart import Dimension, HadamardMatrix, HadamardVector

RUN_SLOW = os.environ.get("HADPART_RUN_SLOW") == "1"


def slow(fn):
    fn = pytest.mark.skipif(
        not RUN_SLOW, reason="multi-minute check; set HADPART_RUN_SLOW=1 to run"
    )(fn)
    return pytest.mark.slow(fn)


def unpack(v: HadamardVector) -> list[int]:
    """±1 coordinate list straight from the bit definition."""
    return [-1 if (v.bits >> t) & 1 else 1 for t in range(v.dim.m)]


def naive_inner(x: HadamardVector, y: HadamardVector) -> int:
    """Coordinate-by-coordinate product sum; the popcount-free oracle."""
    return sum(a * b for a, b in zip(unpack(x), unpack(y)))


def pm_array(matrix: HadamardMatrix) -> np.ndarray:
    return np.array([unpack(v) for v in matrix.rows], dtype=np.int64)


def gram_is_orthogonal(matrix: HadamardMatrix) -> bool:
    """numpy oracle: M @ M.T == m * I."""
    a = pm_array(matrix)
    m = matrix.dim.m
    return bool(np.array_equal(a @ a.T, m * np.eye(m, dtype=np.int64)))


def hashset_coverage(matrices, dim: Dimension):
    """Hash-set coverage oracle: (duplicates, missing) row bit patterns."""
    seen = set()
    duplicates = []
    for matrix in matrices:
        for v in matrix.rows:
            if v.bits in seen:
                duplicates.append(v.bits)
            seen.add(v.bits)
    everything = {pattern << 1 for pattern in range(1 << (dim.m - 1))}
    missing = sorted(everything - seen)
    return duplicates, missing
