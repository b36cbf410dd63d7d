"""Exception types raised by dynseq."""


class DynseqError(ValueError):
    """Base class for all dynseq errors."""


class DegenerateDistance(DynseqError):
    """A singular kernel was evaluated at (numerically) zero distance."""


class NoAdmissibleRegion(DynseqError):
    """The exclusion constraint leaves no admissible location for a new point."""


class EmptySet(DynseqError):
    """An operation that needs at least one point received none."""


class UnsupportedDimension(DynseqError):
    """Exact computation was requested in a dimension that is not supported."""


class InsufficientPoints(DynseqError):
    """A sequence is shorter than the operation requires."""
