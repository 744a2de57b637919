"""Exception types raised across the package."""

from __future__ import annotations


class HtaError(Exception):
    """Base class for every error raised by this package."""


class SkewViolation(HtaError, ValueError):
    def __init__(self, table: str, indices: tuple[int, ...]):
        self.table = table
        self.indices = indices
        super().__init__(f"{table} table is not skew-symmetric at indices {indices}")


class DimensionMismatch(HtaError, ValueError):
    pass


class WrongDimension(HtaError, ValueError):
    pass


class SingularMatrix(HtaError, ValueError):
    pass


class ArityMismatch(HtaError, ValueError):
    pass


class UnknownIdentity(HtaError, KeyError):
    pass


class PreconditionDotNonzero(HtaError, ValueError):
    pass


class PreconditionStarNonzero(HtaError, ValueError):
    pass


class PreconditionBinaryNonzero(HtaError, ValueError):
    pass


class NotValidHta(HtaError, ValueError):
    pass


class NotValidLta(HtaError, ValueError):
    pass


class NotValidBol(HtaError, ValueError):
    pass


class Unclassifiable(HtaError, RuntimeError):
    """A valid algebra matched no theorem type; this indicates a bug or a counterexample."""


class BudgetExceeded(HtaError, RuntimeError):
    pass


class UnsatisfiableConstraint(HtaError, ValueError):
    pass


class ParseError(HtaError, ValueError):
    def __init__(self, position: str, reason: str):
        self.position = position
        self.reason = reason
        super().__init__(f"{position}: {reason}")
