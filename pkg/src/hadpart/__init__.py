"""Partition of all sign classes of ±1 vectors in dimension 2^n into
Hadamard matrices.

In dimension m = 2^n there are 2^(m-1) vectors with entries ±1, counting
x and -x once.  This package builds the recursive partition of all of
them into 2^(2^n - n - 1) Hadamard matrices, addresses each matrix by a
flat index, inverts the construction (vector -> matrix, row, sign),
verifies the whole family at desk scale, and decides for arbitrary m
whether such a partition can exist.
"""

from .construction import (
    BASE_LEVEL,
    FLAT_LEVEL_CAP,
    ITERATION_LEVEL_CAP,
    HadamardMatrix,
    HalfPair,
    PartitionAddress,
    base_partition,
    count_exponent,
    decode_address,
    double_matrix,
    encode_address,
    family_size,
    iter_partition,
    matrix_by_address,
    pair_matrices,
    shift_matrix,
)
from .errors import (
    BadMagic,
    CountMismatch,
    DimensionMismatch,
    DimensionTooLarge,
    FormatError,
    HadpartError,
    IllegalCharacter,
    IndexOutOfRange,
    LevelTooLargeForFlatIndex,
    LevelTooLargeForFullIteration,
    LevelTooLargeForFullVerification,
    NegativeLevel,
    NonPowerOfTwoLength,
    ShiftOutOfRange,
    TruncatedFile,
    UnsupportedDimension,
    ZeroDimension,
)
from .feasibility import FeasibilityVerdict, Reason, partition_feasible
from .formats import (
    PartitionFileHeader,
    export_pbm,
    read_partition,
    read_partition_with_header,
    write_partition,
)
from .locate import Location, locate_vector
from .vectors import (
    CanonicalVector,
    Dimension,
    HadamardVector,
    canonicalize,
    concat_halves,
    enumerate_canonical,
    format_vector,
    inner_product,
    parse_vector,
    split_halves,
)
from .verify import (
    CoverageBitmap,
    Failure,
    VerifyReport,
    build_family_from_anchor,
    is_hadamard,
    oracle_cross_check,
    verify_partition_full,
    verify_partition_sampled,
    verify_stream,
)

__version__ = "0.1.0"

__all__ = [
    "BASE_LEVEL",
    "FLAT_LEVEL_CAP",
    "ITERATION_LEVEL_CAP",
    "BadMagic",
    "CanonicalVector",
    "CountMismatch",
    "CoverageBitmap",
    "Dimension",
    "DimensionMismatch",
    "DimensionTooLarge",
    "Failure",
    "FeasibilityVerdict",
    "FormatError",
    "HadamardMatrix",
    "HadamardVector",
    "HadpartError",
    "HalfPair",
    "IllegalCharacter",
    "IndexOutOfRange",
    "LevelTooLargeForFlatIndex",
    "LevelTooLargeForFullIteration",
    "LevelTooLargeForFullVerification",
    "Location",
    "NegativeLevel",
    "NonPowerOfTwoLength",
    "PartitionAddress",
    "PartitionFileHeader",
    "Reason",
    "ShiftOutOfRange",
    "TruncatedFile",
    "UnsupportedDimension",
    "VerifyReport",
    "ZeroDimension",
    "base_partition",
    "build_family_from_anchor",
    "canonicalize",
    "concat_halves",
    "count_exponent",
    "decode_address",
    "double_matrix",
    "encode_address",
    "enumerate_canonical",
    "export_pbm",
    "family_size",
    "format_vector",
    "inner_product",
    "is_hadamard",
    "iter_partition",
    "locate_vector",
    "matrix_by_address",
    "oracle_cross_check",
    "pair_matrices",
    "parse_vector",
    "partition_feasible",
    "read_partition",
    "read_partition_with_header",
    "shift_matrix",
    "split_halves",
    "verify_partition_full",
    "verify_partition_sampled",
    "verify_stream",
    "write_partition",
]
