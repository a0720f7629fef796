"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` (bad input, exit
code 2 on the command line) and :class:`ResourceError` (unbounded regions or
configured caps exceeded, exit code 3).
"""


class FiberwalkError(Exception):
    """Base class for all package errors."""


class ValidationError(FiberwalkError, ValueError):
    pass


class ResourceError(FiberwalkError):
    pass


class DimensionMismatch(ValidationError):
    pass


class PointNotInSet(ValidationError):
    pass


class EmptyMoveSet(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class EmptySample(ValidationError):
    pass


class CollinearMoves(ValidationError):
    pass


class SubsetViolation(ValidationError):
    pass


class NotReversible(ValidationError):
    pass


class NotInKernel(ValidationError):
    pass


class DecompositionFailure(ValidationError):
    pass


class NotAugmenting(ValidationError):
    pass


class SetMismatch(ValidationError):
    pass


class UnboundedRegion(ResourceError):
    pass


class UnboundedFiber(UnboundedRegion):
    pass


class ResourceLimit(ResourceError):
    pass


class TooLarge(ResourceError):
    pass
