"""Independent checks that the constructed family is what it claims to be.

Full verification walks a whole level and asserts, from scratch: every
matrix is Hadamard (all row pairs orthogonal), every row is canonical,
every canonical vector of the dimension is covered exactly once, and the
matrix count matches 2^E(n).  Coverage uses a flat bitmap with one bit
per canonical vector, indexed by the vector's bit pattern shifted right
by one; at level 5 that is 256 MiB, far cheaper than hashing 2^31 rows.

Sampled verification scales past full enumeration: a seeded SplitMix64
stream picks flat addresses, each sampled matrix is checked in full, and
the inverse lookup is round-tripped on one random row.  The same seed
always yields the same report, whatever the thread count.

Level 5 full verification dispatches to a compiled kernel; levels 2 to 4
run the plain Python path, which doubles as the reference the kernel is
tested against.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .construction import (
    HadamardMatrix,
    count_exponent,
    decode_address,
    double_matrix,
    family_size,
    iter_partition,
    matrix_by_address,
    pair_matrices,
)
from .errors import LevelTooLargeForFullVerification, NegativeLevel
from .locate import locate_vector
from .rng import SplitMix64
from .vectors import Dimension, HadamardVector, format_vector

__all__ = [
    "CoverageBitmap",
    "Failure",
    "VerifyReport",
    "is_hadamard",
    "verify_partition_full",
    "verify_partition_sampled",
    "verify_stream",
    "oracle_cross_check",
    "build_family_from_anchor",
]

FULL_VERIFICATION_LEVEL_CAP = 5

# Failure kinds.
NOT_ORTHOGONAL = "not-orthogonal"
ROW_NOT_CANONICAL = "row-not-canonical"
DUPLICATE_VECTOR = "duplicate-vector"
MISSING_VECTOR = "missing-vector"
COUNT_MISMATCH = "count-mismatch"
LOCATE_MISMATCH = "locate-mismatch"
WITNESSES_SUPPRESSED = "witnesses-suppressed"

MAX_WITNESSES = 64


@dataclass(frozen=True)
class Failure:
    """One replayable witness: rerunning the named check on the named
    object reproduces the failure."""

    kind: str
    flat: int | None = None
    row: int | None = None
    rows: tuple[int, int] | None = None
    bits: int | None = None
    detail: str = ""

    def line(self) -> str:
        parts = [self.kind]
        if self.flat is not None:
            parts.append(f"flat={self.flat}")
        if self.row is not None:
            parts.append(f"row={self.row}")
        if self.rows is not None:
            parts.append(f"rows=({self.rows[0]},{self.rows[1]})")
        if self.bits is not None:
            parts.append(f"bits={self.bits:#x}")
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass(frozen=True)
class VerifyReport:
    level: int
    matrices_checked: int
    rows_checked: int
    coverage_mode: str  # 'full' | 'sampled' | 'skipped'
    failures: tuple[Failure, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = (
            f"{verdict} n={self.level} matrices={self.matrices_checked}"
            f" rows={self.rows_checked} coverage={self.coverage_mode}"
        )
        if not self.passed:
            line += f" failures={len(self.failures)}"
        return line

    def to_text(self) -> str:
        """Line-oriented report: summary, then one line per witness.

        Timing is deliberately excluded so identical checks give
        byte-identical reports.
        """
        lines = [self.summary_line()]
        lines += [f.line() for f in self.failures]
        return "\n".join(lines) + "\n"

    def key(self):
        """Everything except elapsed, for reproducibility comparisons."""
        return (
            self.level,
            self.matrices_checked,
            self.rows_checked,
            self.coverage_mode,
            self.failures,
        )


class CoverageBitmap:
    """One bit per canonical vector; set() reports whether the bit was new."""

    def __init__(self, dim: Dimension):
        self.dim = dim
        self.nbits = 1 << (dim.m - 1)
        self._bytes = bytearray((self.nbits + 7) // 8)
        self.set_count = 0

    def set(self, canonical_bits: int) -> bool:
        """Mark a canonical bit pattern; False means it was already set."""
        idx = canonical_bits >> 1
        byte = idx >> 3
        bit = 1 << (idx & 7)
        prev = self._bytes[byte]
        if prev & bit:
            return False
        self._bytes[byte] = prev | bit
        self.set_count += 1
        return True

    def all_set(self) -> bool:
        return self.set_count == self.nbits

    def missing(self, limit: int | None = None):
        """Canonical bit patterns not yet covered, in increasing order."""
        out = []
        for idx in range(self.nbits):
            if not (self._bytes[idx >> 3] >> (idx & 7)) & 1:
                out.append(idx << 1)
                if limit is not None and len(out) >= limit:
                    break
        return out


def is_hadamard(matrix: HadamardMatrix) -> tuple[bool, tuple[int, int] | None]:
    """All-pairs orthogonality; returns the first failing row pair, if any."""
    bits = [v.bits for v in matrix.rows]
    half = matrix.dim.m >> 1
    for r in range(len(bits)):
        x = bits[r]
        for s in range(r + 1, len(bits)):
            if (x ^ bits[s]).bit_count() != half:
                return False, (r, s)
    return True, None


def _cap_witnesses(failures: list[Failure]) -> tuple[Failure, ...]:
    if len(failures) <= MAX_WITNESSES:
        return tuple(failures)
    kept = failures[:MAX_WITNESSES]
    kept.append(
        Failure(
            kind=WITNESSES_SUPPRESSED,
            detail=f"count={len(failures) - MAX_WITNESSES}",
        )
    )
    return tuple(kept)


def verify_stream(level, pairs, coverage_mode="full", expected_count=None):
    """Check an explicit (flat, matrix) stream; the engine behind both the
    Python full pass and file verification.

    coverage_mode 'full' demands every canonical vector exactly once and
    checks the matrix count (expected_count defaults to the family size);
    'skipped' still flags duplicate rows but tolerates missing ones, for
    partial-range inputs.
    """
    t0 = time.perf_counter()
    dim = Dimension(level)
    failures: list[Failure] = []
    full = coverage_mode == "full"
    bitmap = CoverageBitmap(dim) if full else None
    seen: dict[int, int] = {} if not full else None
    nmat = 0
    nrows = 0

    for flat, matrix in pairs:
        nmat += 1
        ok, bad_pair = is_hadamard(matrix)
        if not ok:
            failures.append(Failure(kind=NOT_ORTHOGONAL, flat=flat, rows=bad_pair))
        for r, v in enumerate(matrix.rows):
            nrows += 1
            if v.bits & 1:
                failures.append(Failure(kind=ROW_NOT_CANONICAL, flat=flat, row=r))
                continue
            if full:
                if not bitmap.set(v.bits):
                    failures.append(
                        Failure(
                            kind=DUPLICATE_VECTOR,
                            flat=flat,
                            row=r,
                            bits=v.bits,
                            detail=f"vector={format_vector(v)}",
                        )
                    )
            else:
                if v.bits in seen:
                    failures.append(
                        Failure(
                            kind=DUPLICATE_VECTOR,
                            flat=flat,
                            row=r,
                            bits=v.bits,
                            detail=f"first-flat={seen[v.bits]}",
                        )
                    )
                else:
                    seen[v.bits] = flat

    if full:
        if expected_count is None:
            expected_count = family_size(level)
        if not bitmap.all_set():
            for bits in bitmap.missing(limit=MAX_WITNESSES):
                failures.append(
                    Failure(
                        kind=MISSING_VECTOR,
                        bits=bits,
                        detail=f"vector={format_vector(HadamardVector(dim, bits))}",
                    )
                )
    if expected_count is not None and nmat != expected_count:
        failures.append(
            Failure(
                kind=COUNT_MISMATCH,
                detail=f"expected={expected_count} actual={nmat}",
            )
        )

    return VerifyReport(
        level=level,
        matrices_checked=nmat,
        rows_checked=nrows,
        coverage_mode=coverage_mode,
        failures=_cap_witnesses(failures),
        elapsed=time.perf_counter() - t0,
    )


def verify_partition_full(n: int, threads: int = 1, method: str = "auto"):
    """Walk the whole level-n family and check every claimed property.

    method 'python' forces the reference path, 'fast' the compiled kernel
    (available for 3 <= n <= 5); 'auto' picks the kernel only where the
    Python path would be slow (n == 5).
    """
    if n < 0:
        raise NegativeLevel(f"level must be >= 0, got {n}")
    if n > FULL_VERIFICATION_LEVEL_CAP:
        raise LevelTooLargeForFullVerification(
            f"coverage bitmap would need 2^{(1 << n) - 1} bits; cap is n <= "
            f"{FULL_VERIFICATION_LEVEL_CAP}"
        )
    if method == "auto":
        method = "fast" if n == FULL_VERIFICATION_LEVEL_CAP else "python"
    if method == "python":
        return verify_stream(
            n, enumerate(iter_partition(n)), coverage_mode="full"
        )
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    if n < 3:
        return verify_stream(n, enumerate(iter_partition(n)), coverage_mode="full")
    return _verify_full_fast(n, threads)


def _verify_full_fast(n: int, threads: int):
    import numpy as np

    from . import _fastpath

    t0 = time.perf_counter()
    dim = Dimension(n)
    prev = np.array(
        [m.row_bits() for m in iter_partition(n - 1)], dtype=np.uint64
    )
    shift_bits = n - 1
    j_bits = count_exponent(n - 1)
    total = family_size(n)
    threads = max(1, min(threads, total))
    nbytes = ((1 << (dim.m - 1)) + 7) // 8
    edges = [total * t // threads for t in range(threads + 1)]

    bitmaps = [np.zeros(nbytes, np.uint8) for _ in range(threads)]
    buffers = [_fastpath.make_witness_buffers() for _ in range(threads)]

    def work(t):
        orth_w, canon_w, dup_w = buffers[t]
        return _fastpath.verify_range(
            prev, shift_bits, j_bits, edges[t], edges[t + 1],
            bitmaps[t], orth_w, canon_w, dup_w,
        )

    if threads == 1:
        results = [work(0)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, range(threads)))

    failures: list[Failure] = []
    nmat = 0
    nrows = 0
    suppressed = 0
    for t, (cmat, crows, n_orth, n_canon, n_dup) in enumerate(results):
        nmat += cmat
        nrows += crows
        orth_w, canon_w, dup_w = buffers[t]
        for w in range(min(n_orth, _fastpath.WITNESS_CAP)):
            failures.append(
                Failure(
                    kind=NOT_ORTHOGONAL,
                    flat=int(orth_w[w, 0]),
                    rows=(int(orth_w[w, 1]), int(orth_w[w, 2])),
                )
            )
        for w in range(min(n_canon, _fastpath.WITNESS_CAP)):
            failures.append(
                Failure(
                    kind=ROW_NOT_CANONICAL,
                    flat=int(canon_w[w, 0]),
                    row=int(canon_w[w, 1]),
                )
            )
        for w in range(min(n_dup, _fastpath.WITNESS_CAP)):
            bits = int(dup_w[w])
            failures.append(
                Failure(
                    kind=DUPLICATE_VECTOR,
                    bits=bits,
                    detail=f"vector={format_vector(HadamardVector(dim, bits))}",
                )
            )
        suppressed += max(0, n_orth - _fastpath.WITNESS_CAP)
        suppressed += max(0, n_canon - _fastpath.WITNESS_CAP)
        suppressed += max(0, n_dup - _fastpath.WITNESS_CAP)

    # Cross-thread duplicates: a bit set in two private bitmaps.
    merged = bitmaps[0]
    for t in range(1, threads):
        overlap = merged & bitmaps[t]
        if overlap.any():
            for byte in np.flatnonzero(overlap)[:8]:
                b = int(overlap[byte])
                while b:
                    low = b & -b
                    bits = (int(byte) * 8 + low.bit_length() - 1) << 1
                    failures.append(
                        Failure(
                            kind=DUPLICATE_VECTOR,
                            bits=bits,
                            detail=f"vector={format_vector(HadamardVector(dim, bits))}",
                        )
                    )
                    b ^= low
        merged = merged | bitmaps[t]

    if not bool((merged == 255).all()):
        for byte in np.flatnonzero(merged != 255)[:8]:
            b = int(merged[byte]) ^ 0xFF
            while b:
                low = b & -b
                bits = (int(byte) * 8 + low.bit_length() - 1) << 1
                failures.append(
                    Failure(
                        kind=MISSING_VECTOR,
                        bits=bits,
                        detail=f"vector={format_vector(HadamardVector(dim, bits))}",
                    )
                )
                b ^= low

    if nmat != total:
        failures.append(
            Failure(kind=COUNT_MISMATCH, detail=f"expected={total} actual={nmat}")
        )
    if suppressed:
        failures.append(
            Failure(kind=WITNESSES_SUPPRESSED, detail=f"count={suppressed}")
        )

    return VerifyReport(
        level=n,
        matrices_checked=nmat,
        rows_checked=nrows,
        coverage_mode="full",
        failures=_cap_witnesses(failures),
        elapsed=time.perf_counter() - t0,
    )


@dataclass(frozen=True)
class _SampleResult:
    index: int
    flat: int
    row: int
    row_bits: int
    bad_pair: tuple[int, int] | None
    noncanonical: tuple[int, ...]
    locate_detail: str | None


def _check_sample(n: int, index: int, flat: int, row: int) -> _SampleResult:
    matrix = matrix_by_address(decode_address(n, flat))
    _, bad_pair = is_hadamard(matrix)
    noncanonical = tuple(r for r, v in enumerate(matrix.rows) if v.bits & 1)
    v = matrix.rows[row]
    loc = locate_vector(v)
    locate_detail = None
    got_flat = loc.addr.to_flat()
    if (got_flat, loc.row, loc.sign) != (flat, row, 1):
        locate_detail = f"got=({got_flat},{loc.row},{loc.sign:+d})"
    return _SampleResult(index, flat, row, v.bits, bad_pair, noncanonical, locate_detail)


def verify_partition_sampled(n: int, samples: int, seed: int, threads: int = 1):
    """Spot-check seeded random addresses; same seed, same report.

    Draws are without replacement: repeated flat addresses are redrawn,
    so asking for at least the family size checks every matrix exactly
    once.  Each sampled matrix gets the full orthogonality and
    canonicality check, plus a locate round-trip on one random row.
    Duplicate detection runs across the sampled rows only, so coverage is
    reported as 'sampled'.  Thread count affects wall time at most; the
    report content is merged in draw order and is thread-count
    independent.
    """
    if n < 0:
        raise NegativeLevel(f"level must be >= 0, got {n}")
    t0 = time.perf_counter()
    rng = SplitMix64(seed)
    e = count_exponent(n)
    want = min(samples, family_size(n))
    draws = []
    chosen = set()
    while len(draws) < want:
        flat, row = rng.bits(e), rng.bits(n)
        if flat in chosen:
            continue
        chosen.add(flat)
        draws.append((flat, row))
    samples = want

    def work(chunk):
        return [
            _check_sample(n, idx, flat, row)
            for idx, (flat, row) in chunk
        ]

    indexed = list(enumerate(draws))
    threads = max(1, threads)
    if threads == 1 or samples < 2:
        results = work(indexed)
    else:
        step = (samples + threads - 1) // threads
        chunks = [indexed[c : c + step] for c in range(0, samples, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
        results = [r for part in parts for r in part]

    failures: list[Failure] = []
    seen: dict[int, tuple[int, int]] = {}
    m = Dimension(n).m
    for res in results:
        if res.bad_pair is not None:
            failures.append(
                Failure(kind=NOT_ORTHOGONAL, flat=res.flat, rows=res.bad_pair)
            )
        for r in res.noncanonical:
            failures.append(Failure(kind=ROW_NOT_CANONICAL, flat=res.flat, row=r))
        if res.locate_detail is not None:
            failures.append(
                Failure(
                    kind=LOCATE_MISMATCH,
                    flat=res.flat,
                    row=res.row,
                    detail=res.locate_detail,
                )
            )
        prior = seen.get(res.row_bits)
        if prior is None:
            seen[res.row_bits] = (res.flat, res.row)
        elif prior != (res.flat, res.row):
            failures.append(
                Failure(
                    kind=DUPLICATE_VECTOR,
                    flat=res.flat,
                    row=res.row,
                    bits=res.row_bits,
                    detail=f"first-flat={prior[0]}",
                )
            )

    return VerifyReport(
        level=n,
        matrices_checked=samples,
        rows_checked=samples * m,
        coverage_mode="sampled",
        failures=_cap_witnesses(failures),
        elapsed=time.perf_counter() - t0,
    )


def _double_interleaved(pair) -> HadamardMatrix:
    """Double a strip placing each row directly above its negated-right copy.

    Same 2m rows as double_matrix, different order: (row 0, row 0
    negated-right, row 1, ...).  Fed the one-matrix level-1 anchor, this
    stacking regenerates the two printed 4x4 base matrices verbatim, row
    order included, which is what lets an anchored rebuild reproduce the
    shipping partition rather than merely another valid one.  (Row order
    of the stage matrices matters: the next level's row pairing reads
    parents by row index, so two stackings of equal row sets can diverge
    one level up.)
    """
    from .vectors import concat_halves

    m = pair.left.dim.m
    dim2 = Dimension(pair.left.dim.n + 1)
    rows = []
    for r in range(m):
        rows.append(concat_halves(pair.left.rows[r], pair.right.rows[r]))
        rows.append(concat_halves(pair.left.rows[r], -pair.right.rows[r]))
    return HadamardMatrix(dim2, tuple(rows))


def build_family_from_anchor(n: int, anchor_level: int, anchor, stacking="interleaved"):
    """Run the pairing-and-doubling recursion from an arbitrary anchor family.

    stacking 'interleaved' keeps each stage aligned with the printed base
    (see _double_interleaved) and is what the cross-check uses; 'block'
    applies the shipping double_matrix order instead, which still yields
    a valid partition at every level but, from a level-1 anchor, not the
    same one.
    """
    if n < anchor_level:
        raise ValueError(f"target level {n} below anchor level {anchor_level}")
    if stacking == "interleaved":
        double = _double_interleaved
    elif stacking == "block":
        double = double_matrix
    else:
        raise ValueError(f"unknown stacking {stacking!r}")
    family = [
        m if isinstance(m, HadamardMatrix) else HadamardMatrix.from_strings(m)
        for m in anchor
    ]
    for level in range(anchor_level + 1, n + 1):
        half = 1 << (level - 1)
        family = [
            double(pair_matrices(ai, aj, k))
            for ai in family
            for aj in family
            for k in range(half)
        ]
    return family


def oracle_cross_check(n: int) -> bool:
    """Compare the shipping level-2-anchored family with a level-1-anchored
    rebuild, as unordered sets of unordered row sets."""
    if not 2 <= n <= 4:
        raise ValueError(f"cross-check supported for 2 <= n <= 4, got {n}")
    shipping = {frozenset(m.row_bits()) for m in iter_partition(n)}
    alt = {
        frozenset(m.row_bits())
        for m in build_family_from_anchor(n, 1, [("++", "+-")])
    }
    return shipping == alt and len(shipping) == family_size(n)
