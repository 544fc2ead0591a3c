"""Command-line surface.

Subcommands: generate (dump a level to text or packed form), verify
(full or sampled checks, from the generator or from a file), locate
(inverse lookup of a vector), count (family size, printed symbolically),
feasible (can dimension m be partitioned at all), bench (generation
throughput), pbm (render one matrix as a Netpbm image).

Exit codes: 0 success or verification pass, 1 verification failure or
runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time

from .construction import (
    count_exponent,
    decode_address,
    family_size,
    iter_partition,
    matrix_by_address,
)
from .errors import HadpartError
from .feasibility import partition_feasible
from .formats import export_pbm, read_partition_with_header, write_partition
from .locate import locate_vector
from .vectors import parse_vector
from .verify import verify_partition_full, verify_partition_sampled, verify_stream

_BENCH_DEFAULT_LIMIT = 100_000


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like A..B, got {text!r}")
    return int(lo), int(hi)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hadpart",
        description="Partition all sign classes of ±1 vectors in dimension "
        "2^n into Hadamard matrices: generate, verify, look up, inspect.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="dump a level to a file or stdout")
    gen.add_argument("-n", type=int, required=True, help="level (dimension 2^n)")
    gen.add_argument("--format", choices=["text", "packed"], default="text")
    gen.add_argument("--range", dest="flat_range", metavar="A..B",
                     help="half-open flat index range to dump")
    gen.add_argument("-o", "--output", help="output file (default stdout)")

    ver = sub.add_parser("verify", help="check the partition properties at level n")
    ver.add_argument("-n", type=int, required=True)
    mode = ver.add_mutually_exclusive_group()
    mode.add_argument("--full", action="store_true",
                      help="walk the whole family (default)")
    mode.add_argument("--samples", type=int, metavar="N",
                      help="check N seeded random addresses instead")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--threads", type=int, default=1)
    ver.add_argument("--input", metavar="FILE",
                     help="verify matrices from a partition file instead of "
                     "the generator")
    ver.add_argument("--timing", action="store_true",
                     help="report elapsed time on stderr")

    loc = sub.add_parser("locate", help="find the matrix holding a vector")
    loc.add_argument("-n", type=int, required=True)
    loc.add_argument("--vector", required=True, metavar="PMSTRING",
                     help="the vector as a '+'/'-' string")

    cnt = sub.add_parser("count", help="print the family size, symbolically")
    cnt.add_argument("-n", type=int, required=True)

    fea = sub.add_parser("feasible", help="can dimension m be partitioned?")
    fea.add_argument("-m", type=int, required=True)

    ben = sub.add_parser("bench", help="measure generation throughput")
    ben.add_argument("-n", type=int, required=True)
    ben.add_argument("--limit", type=int, default=_BENCH_DEFAULT_LIMIT,
                     help="matrices to generate (default %(default)s)")

    pbm = sub.add_parser("pbm", help="render one matrix as a plain PBM image")
    pbm.add_argument("-n", type=int, required=True)
    pbm.add_argument("--flat", type=int, default=0, help="flat matrix index")
    pbm.add_argument("-o", "--output", help="output file (default stdout)")

    return parser


def _open_sink(path: str | None):
    if path is None:
        return sys.stdout.buffer, False
    return open(path, "wb"), True


def _cmd_generate(args) -> int:
    start, stop = (0, None)
    if args.flat_range is not None:
        start, stop = _parse_range(args.flat_range)
    sink, owned = _open_sink(args.output)
    try:
        write_partition(args.n, args.format, sink, start=start, stop=stop)
        sink.flush()
    finally:
        if owned:
            sink.close()
    return 0


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.input is not None:
        if args.samples is not None:
            print("--samples cannot be combined with --input", file=sys.stderr)
            return 2
        with open(args.input, "rb") as f:
            header, pairs = read_partition_with_header(f)
            if header.level != args.n:
                print(
                    f"input file is level {header.level}, expected {args.n}",
                    file=sys.stderr,
                )
                return 1
            if header.is_full:
                report = verify_stream(header.level, pairs, coverage_mode="full")
            else:
                report = verify_stream(
                    header.level, pairs, coverage_mode="skipped",
                    expected_count=header.nstored,
                )
    elif args.samples is not None:
        report = verify_partition_sampled(
            args.n, args.samples, args.seed, threads=args.threads
        )
    else:
        method = "fast" if args.threads > 1 and args.n >= 3 else "auto"
        report = verify_partition_full(args.n, threads=args.threads, method=method)
    sys.stdout.write(report.to_text())
    if args.timing:
        print(f"elapsed: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_locate(args) -> int:
    v = parse_vector(args.vector)
    if v.dim.n != args.n:
        print(
            f"vector has dimension {v.dim.m}, expected 2^{args.n}",
            file=sys.stderr,
        )
        return 2
    loc = locate_vector(v)
    sign = "+" if loc.sign > 0 else "-"
    print(f"matrix={loc.addr.to_flat()} row={loc.row} sign={sign}")
    return 0


def _cmd_count(args) -> int:
    print(f"2^{count_exponent(args.n)}")
    return 0


def _cmd_feasible(args) -> int:
    verdict = partition_feasible(args.m)
    if verdict.feasible:
        print(f"feasible: {verdict.m} = 2^{verdict.m.bit_length() - 1}")
    else:
        print(f"infeasible: {verdict.m} does not divide 2^{verdict.m - 1}")
        print(f"residue: 2^{verdict.m - 1} mod {verdict.m} = {verdict.residue}")
        if verdict.note is not None:
            print(
                "note: in odd dimensions a maximal orthogonal set of ±1 "
                "vectors has just two members"
            )
    return 0


def _cmd_bench(args) -> int:
    n = args.n
    limit = min(args.limit, family_size(n)) if n <= 6 else args.limit
    m = 1 << n
    t0 = time.perf_counter()
    made = 0
    if n <= 5:
        for matrix in iter_partition(n):
            made += 1
            if made >= limit:
                break
    else:
        for flat in range(limit):
            matrix_by_address(decode_address(n, flat))
            made += 1
    elapsed = time.perf_counter() - t0
    rate = made / elapsed if elapsed > 0 else float("inf")
    print(f"matrices/sec: {rate:.1f}")
    print(f"rows/sec: {rate * m:.1f}")
    return 0


def _cmd_pbm(args) -> int:
    sink, owned = _open_sink(args.output)
    try:
        export_pbm(decode_address(args.n, args.flat), sink)
        sink.flush()
    finally:
        if owned:
            sink.close()
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "verify": _cmd_verify,
    "locate": _cmd_locate,
    "count": _cmd_count,
    "feasible": _cmd_feasible,
    "bench": _cmd_bench,
    "pbm": _cmd_pbm,
}


def _normalize(argv: list) -> list:
    """Glue values onto options whose arguments may start with '-', so
    `locate --vector ---+` parses the way it reads."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--vector", "--range") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run_cli(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(_normalize(list(argv)))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except (HadpartError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
