"""Exception types shared across the package."""


class NcprobError(Exception):
    """Base class for all library errors."""


class LimitExceeded(NcprobError):
    """Requested size is above the configured enumeration limit."""


class InvalidPartition(NcprobError):
    """Blocks do not form a valid (non-crossing) partition of the ground set."""


class SizeMismatch(NcprobError):
    """Two partitions live on ground sets of different sizes."""


class NotComparable(NcprobError):
    """The two partitions are not comparable in the required order."""


class NotInner(NcprobError):
    """The indicated block is not an inner block."""


class IsBlockMax(NcprobError):
    """The element is the maximum of its block, so the block cannot be cut there."""


class NotLLOne(NcprobError):
    """The partition does not have a unique outer block containing 1 and n."""


class NotOuter(NcprobError):
    """A block required to be outer is not an outer block of the partition."""


class EmptySubset(NcprobError):
    """A non-empty position subset is required."""


class PositionOutOfRange(NcprobError):
    """A position index falls outside the word."""


class ShapeMismatch(NcprobError):
    """Families disagree in number of generators or truncation degree."""


class DegreeTooLow(NcprobError):
    """The family is not truncated deep enough for the requested operation."""


class DimMismatch(NcprobError):
    """Family and tensor are built over spaces of different dimension."""


class DegreeMismatch(NcprobError):
    """Two families that must share a truncation degree do not."""


class NotTracial(NcprobError):
    """The operation requires a tracial family."""
