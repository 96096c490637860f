"""Exception types shared across the package."""


class SIdncError(Exception):
    """Base class for all package errors."""


class ConflictingCodingSet(SIdncError):
    """A coding set contains two packets wanted by the same receiver."""


class InvalidSolution(SIdncError):
    """A solution fails clique or coverage validation for its SFM."""


class EmptyDomain(SIdncError):
    """An average was requested over an empty set of decoding events."""


class SizeLimitExceeded(SIdncError):
    """An exact enumeration grew past its configured cap."""


class BranchLimitExceeded(SizeLimitExceeded):
    """The optimal solution search exceeded its live-branch cap."""


class SlotCapExceeded(SIdncError):
    """A transmission simulation ran past its slot budget."""
