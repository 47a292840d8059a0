"""Exception types shared across the package.

The CLI maps these onto its exit-code contract (1 = verification failure,
2 = usage/input error, 3 = store or I/O error), so new failure modes should
reuse one of the classes below rather than raising bare exceptions.
"""


class TreepolyError(Exception):
    """Base class for all package-specific errors."""


class EdgeListParseError(TreepolyError, ValueError):
    """Malformed edge-list input (duplicate edge, cycle, disconnected, bad label)."""


class InvalidCodeError(TreepolyError, ValueError):
    """A canonical code string is unbalanced or otherwise malformed."""


class CoefficientOverflowError(TreepolyError, OverflowError):
    """A polynomial coefficient exceeded the fixed 64-bit accumulator width."""


class CountMismatchError(TreepolyError, RuntimeError):
    """A generated level's tree count disagrees with the expected count."""


class SealedLevelError(TreepolyError, RuntimeError):
    """Attempt to write into a level that was already sealed."""


class UnsealedLevelError(TreepolyError, RuntimeError):
    """An operation required a sealed level that is incomplete or missing."""


class RecordInvariantError(TreepolyError, ValueError):
    """A TreeRecord failed its structural invariants on insert."""


class StoreCorruptionError(TreepolyError, RuntimeError):
    """Store files are inconsistent with their manifests or checksums."""
