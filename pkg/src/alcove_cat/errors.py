"""
Exception hierarchy for alcove-cat.

Every error raised by the library derives from AlcoveCatError, which is a
ValueError, so callers that already catch ValueError keep working.
"""


class AlcoveCatError(ValueError):
    """Base class for all library errors."""


class DimensionMismatchError(AlcoveCatError):
    """Operands have incompatible shapes or ambient dimensions."""


class InvalidLieTypeError(AlcoveCatError):
    """A (family, rank) pair that names no simple Lie type."""


class NotARootError(AlcoveCatError):
    """A vector passed where a root of the system was required."""


class PreconditionError(AlcoveCatError):
    """An operation was called outside its domain (rank drop, not symplectic...)."""


class EnumerationLimitError(AlcoveCatError):
    """A breadth-first closure grew past the configured cap."""


class ConvergenceError(AlcoveCatError):
    """An iterative float computation did not reach its tolerance."""


class InexactAngleError(AlcoveCatError):
    """Exact trigonometry requested at an angle with irrational cos/sin."""


class UnsupportedCheckError(AlcoveCatError):
    """A verification check that does not apply to the requested family."""


class PlanParseError(AlcoveCatError):
    """A verification plan file could not be read or validated."""


class RankLimitError(AlcoveCatError):
    """A rank above max_rank was requested for an enumeration-heavy operation."""
