"""Existence of a full partition in an arbitrary dimension m.

A partition of all 2^(m-1) sign classes into m x m Hadamard matrices
forces m to divide 2^(m-1), which fails whenever m has an odd prime
factor, i.e. whenever m is not a power of two.  For odd m > 1 there is a
stronger obstruction worth reporting alongside: a maximal orthogonal set
of ±1 vectors has only two members.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ZeroDimension

__all__ = ["Reason", "FeasibilityVerdict", "partition_feasible"]


class Reason(enum.Enum):
    POWER_OF_TWO = "power-of-two"
    DIVISIBILITY_FAILS = "divisibility-fails"
    ODD_DIMENSION_MAX_TWO_ORTHOGONAL = "odd-dimension-max-two-orthogonal"


@dataclass(frozen=True)
class FeasibilityVerdict:
    m: int
    feasible: bool
    reason: Reason
    # 2^(m-1) mod m; nonzero exactly when infeasible.
    residue: int | None = None
    # Supplementary remark, only ever ODD_DIMENSION_MAX_TWO_ORTHOGONAL.
    note: Reason | None = None


def partition_feasible(m: int) -> FeasibilityVerdict:
    """Decide whether dimension m admits a full partition, with evidence."""
    if m < 1:
        raise ZeroDimension(f"dimension must be >= 1, got {m}")
    if m & (m - 1) == 0:
        return FeasibilityVerdict(m=m, feasible=True, reason=Reason.POWER_OF_TWO)
    residue = pow(2, m - 1, m)
    note = Reason.ODD_DIMENSION_MAX_TWO_ORTHOGONAL if m % 2 else None
    return FeasibilityVerdict(
        m=m,
        feasible=False,
        reason=Reason.DIVISIBILITY_FAILS,
        residue=residue,
        note=note,
    )
