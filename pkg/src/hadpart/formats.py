"""Partition file formats: text, packed binary, and PBM images.

Text files start with the header line ``HPART n=<n> count=2^<E(n)>`` and
then hold one matrix per block, m lines of '+'/'-' each, blocks separated
by blank lines, in flat-index order.  The count is written symbolically
because the family size overflows a machine word past level 6.

Packed files start with a 16-byte header: the magic ``HPART\\x01``, the
level as one byte, the family size as a little-endian 64-bit count, and a
format byte.  Each matrix follows as m rows of ceil(m/64) little-endian
64-bit words with zero padding bits.  Sub-range dumps set bit 1 of the
format byte and append two more 64-bit fields, the first flat index and
the number of matrices stored; text sub-ranges append ``range=<a>..<b>``
to the header line.  Readers reject wrong magic, a count that disagrees
with the declared level, nonzero padding, and truncation, reporting the
offending byte offset or line number.

Everything here is byte-deterministic: the same arguments always produce
the identical file.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import BinaryIO, Iterator

from .construction import (
    FLAT_LEVEL_CAP,
    ITERATION_LEVEL_CAP,
    HadamardMatrix,
    PartitionAddress,
    count_exponent,
    decode_address,
    family_size,
    iter_partition,
    matrix_by_address,
)
from .errors import (
    BadMagic,
    CountMismatch,
    FormatError,
    IndexOutOfRange,
    LevelTooLargeForFlatIndex,
    LevelTooLargeForFullIteration,
    TruncatedFile,
)
from .vectors import Dimension, HadamardVector, format_vector, parse_vector

__all__ = [
    "MAGIC",
    "PartitionFileHeader",
    "write_partition",
    "read_partition",
    "read_partition_with_header",
    "export_pbm",
]

MAGIC = b"HPART\x01"
FORMAT_TEXT = 0
FORMAT_PACKED = 1
_RANGE_FLAG = 2
_HEADER_LEN = 16  # magic(6) + level(1) + count(8) + format(1)

_TEXT_HEADER_RE = re.compile(
    rb"^HPART n=(\d+) count=2\^(\d+)(?: range=(\d+)\.\.(\d+))?$"
)


@dataclass(frozen=True)
class PartitionFileHeader:
    level: int
    count: int  # family size at this level, always 2^E(level)
    format: int  # FORMAT_TEXT or FORMAT_PACKED
    start: int  # first flat index stored
    nstored: int  # matrices stored in this file

    @property
    def is_full(self) -> bool:
        return self.start == 0 and self.nstored == self.count


def _resolve_range(n: int, start: int, stop: int | None) -> tuple[int, int]:
    total = family_size(n)
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise IndexOutOfRange(f"range {start}..{stop} outside 0..{total}")
    return start, stop


def _matrices(n: int, start: int, stop: int) -> Iterator[HadamardMatrix]:
    if start == 0 and stop == family_size(n):
        if n > ITERATION_LEVEL_CAP:
            raise LevelTooLargeForFullIteration(
                f"full dump stops at level {ITERATION_LEVEL_CAP}, got {n}"
            )
        yield from iter_partition(n)
    else:
        for flat in range(start, stop):
            yield matrix_by_address(decode_address(n, flat))


def write_partition(
    n: int,
    format: str,
    sink: BinaryIO,
    start: int = 0,
    stop: int | None = None,
) -> int:
    """Dump level n (or a flat sub-range of it) to a byte sink.

    Returns the number of matrices written.
    """
    start, stop = _resolve_range(n, start, stop)
    full = start == 0 and stop == family_size(n)
    # Validate level caps before emitting a single byte.
    if n > FLAT_LEVEL_CAP:
        raise LevelTooLargeForFlatIndex(
            f"partition files are flat-indexed; cap is n <= {FLAT_LEVEL_CAP}"
        )
    if full and n > ITERATION_LEVEL_CAP:
        raise LevelTooLargeForFullIteration(
            f"full dump stops at level {ITERATION_LEVEL_CAP}, got {n}"
        )
    if format == "text":
        header = f"HPART n={n} count=2^{count_exponent(n)}"
        if not full:
            header += f" range={start}..{stop}"
        sink.write(header.encode("ascii") + b"\n")
        for matrix in _matrices(n, start, stop):
            sink.write(b"\n")
            for row in matrix.rows:
                sink.write(format_vector(row).encode("ascii") + b"\n")
    elif format == "packed":
        fmt = FORMAT_PACKED | (0 if full else _RANGE_FLAG)
        sink.write(MAGIC)
        sink.write(bytes([n]))
        sink.write(family_size(n).to_bytes(8, "little"))
        sink.write(bytes([fmt]))
        if not full:
            sink.write(start.to_bytes(8, "little"))
            sink.write((stop - start).to_bytes(8, "little"))
        for matrix in _matrices(n, start, stop):
            for row in matrix.rows:
                sink.write(row.to_words())
    else:
        raise ValueError(f"unknown format {format!r}")
    return stop - start


def read_partition_with_header(source: BinaryIO):
    """Parse the header, then stream (flat index, matrix) pairs lazily."""
    head = source.read(6)
    if head == MAGIC:
        return _read_packed(source)
    if head == b"HPART"[:5] + b" ":
        return _read_text(head, source)
    raise BadMagic(f"unrecognized header start {head!r}")


def read_partition(source: BinaryIO) -> Iterator[tuple[int, HadamardMatrix]]:
    """Stream (flat index, matrix) pairs from a partition file."""
    _, pairs = read_partition_with_header(source)
    return pairs


def _check_count(level: int, count: int):
    if level > 6 or count != family_size(level):
        raise CountMismatch(
            f"header says {count} matrices at level {level}, "
            f"family size is 2^{count_exponent(level)}"
        )


def _read_packed(source: BinaryIO):
    rest = source.read(_HEADER_LEN - 6)
    if len(rest) != _HEADER_LEN - 6:
        raise TruncatedFile("incomplete packed header", 6 + len(rest))
    level = rest[0]
    count = int.from_bytes(rest[1:9], "little")
    fmt = rest[9]
    if fmt & ~_RANGE_FLAG != FORMAT_PACKED:
        raise BadMagic(f"unknown packed format byte {fmt}")
    _check_count(level, count)
    offset = _HEADER_LEN
    if fmt & _RANGE_FLAG:
        ext = source.read(16)
        if len(ext) != 16:
            raise TruncatedFile("incomplete range header", offset + len(ext))
        start = int.from_bytes(ext[:8], "little")
        nstored = int.from_bytes(ext[8:], "little")
        offset += 16
        if start + nstored > count:
            raise CountMismatch(
                f"range {start}..{start + nstored} exceeds family size {count}"
            )
    else:
        start, nstored = 0, count
    header = PartitionFileHeader(level, count, FORMAT_PACKED, start, nstored)

    def pairs():
        dim = Dimension(level)
        row_bytes = dim.words * 8
        pos = offset
        mask = (1 << dim.m) - 1
        for flat in range(start, start + nstored):
            rows = []
            for _ in range(dim.m):
                data = source.read(row_bytes)
                if len(data) != row_bytes:
                    raise TruncatedFile("matrix payload cut short", pos + len(data))
                bits = int.from_bytes(data, "little")
                if bits & ~mask:
                    raise FormatError(f"nonzero padding bits at byte {pos}")
                rows.append(HadamardVector(dim, bits))
                pos += row_bytes
            yield flat, HadamardMatrix(dim, tuple(rows))
        if source.read(1):
            raise TruncatedFile("trailing bytes after final matrix", pos)

    return header, pairs()


def _read_text(head: bytes, source: BinaryIO):
    text = io.TextIOWrapper(source, encoding="ascii")
    first = head.decode("ascii") + (text.readline() or "")
    match = _TEXT_HEADER_RE.match(first.rstrip("\n").encode("ascii"))
    if match is None:
        raise BadMagic(f"malformed text header {first.rstrip()!r}")
    level = int(match.group(1))
    exponent = int(match.group(2))
    if level > FLAT_LEVEL_CAP:
        raise CountMismatch(
            f"flat-indexed files stop at level {FLAT_LEVEL_CAP}, header says {level}"
        )
    if exponent != count_exponent(level):
        raise CountMismatch(
            f"header says 2^{exponent} matrices at level {level}, "
            f"family size is 2^{count_exponent(level)}"
        )
    count = family_size(level)
    if match.group(3) is not None:
        start, stop = int(match.group(3)), int(match.group(4))
        if not 0 <= start <= stop <= count:
            raise CountMismatch(f"range {start}..{stop} exceeds family size {count}")
    else:
        start, stop = 0, count
    header = PartitionFileHeader(level, count, FORMAT_TEXT, start, stop - start)

    def pairs():
        m = Dimension(level).m
        line_no = 1
        for flat in range(start, stop):
            blank = text.readline()
            line_no += 1
            if blank == "":
                raise TruncatedFile("expected blank line before matrix", line_no)
            if blank.strip():
                raise TruncatedFile(
                    f"expected blank line, got {blank.strip()!r}", line_no
                )
            rows = []
            for _ in range(m):
                line = text.readline()
                line_no += 1
                if line == "":
                    raise TruncatedFile("matrix rows cut short", line_no)
                rows.append(parse_vector(line.rstrip("\n")))
            yield flat, HadamardMatrix(rows[0].dim, tuple(rows))
        if text.readline():
            raise TruncatedFile("trailing lines after final matrix", line_no + 1)

    return header, pairs()


def export_pbm(addr: PartitionAddress, sink: BinaryIO):
    """Render one matrix as a plain PBM image: 0 for +1, 1 for -1."""
    matrix = matrix_by_address(addr)
    m = matrix.dim.m
    sink.write(b"P1\n")
    sink.write(f"{m} {m}\n".encode("ascii"))
    for row in matrix.rows:
        pixels = " ".join("1" if (row.bits >> t) & 1 else "0" for t in range(m))
        sink.write(pixels.encode("ascii") + b"\n")
