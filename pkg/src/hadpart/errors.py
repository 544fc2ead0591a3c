"""Exception types raised across the package.

Every error derives from :class:`HadpartError` so callers can catch the
whole family with one handler.  File-format problems additionally derive
from :class:`FormatError`.
"""


class HadpartError(Exception):
    """Base class for all errors raised by this package."""


class NonPowerOfTwoLength(HadpartError, ValueError):
    """Vector length (or dimension) is not a power of two."""


class IllegalCharacter(HadpartError, ValueError):
    """Vector text contains a character other than '+' or '-'."""

    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"illegal character {char!r} at position {position}")


class DimensionMismatch(HadpartError, ValueError):
    """Two operands have different dimensions."""


class DimensionTooLarge(HadpartError, ValueError):
    """Dimension exceeds the cap for full enumeration."""


class ShiftOutOfRange(HadpartError, ValueError):
    """Row-shift count outside [0, m)."""


class NegativeLevel(HadpartError, ValueError):
    """Level (log2 of the dimension) must be non-negative."""


class IndexOutOfRange(HadpartError, ValueError):
    """Flat index outside [0, 2^E(n))."""


class LevelTooLargeForFlatIndex(HadpartError, ValueError):
    """Flat indices are only defined while 2^E(n) fits in 64 bits (n <= 6)."""


class LevelTooLargeForFullIteration(HadpartError, ValueError):
    """Full family iteration is capped (default n <= 5)."""


class LevelTooLargeForFullVerification(HadpartError, ValueError):
    """Full verification needs a 2^(m-1)-bit coverage bitmap (n <= 5)."""


class UnsupportedDimension(HadpartError, ValueError):
    """Vector dimension outside the range the partition is defined for."""


class ZeroDimension(HadpartError, ValueError):
    """Feasibility questions need a dimension of at least 1."""


class FormatError(HadpartError):
    """Base class for partition-file problems."""


class BadMagic(FormatError):
    """Input does not start with a recognized partition header."""


class CountMismatch(FormatError):
    """Header count disagrees with the family size for the declared level."""


class TruncatedFile(FormatError):
    """Input ended mid-stream.

    ``position`` is a byte offset for packed files and a line number for
    text files.
    """

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at {position})")
