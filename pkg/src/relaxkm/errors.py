"""Exception types shared across the package."""


class RelaxKMError(Exception):
    """Base class for all library errors."""


class NotGCM(RelaxKMError):
    pass


class NotAffine(RelaxKMError):
    pass


class MultiplicityUnavailable(RelaxKMError):
    pass


class IndexOutOfRange(RelaxKMError):
    pass


class MixedGCM(RelaxKMError):
    pass


class TruncationOverflow(RelaxKMError):
    pass


class OutOfTruncation(RelaxKMError):
    pass


class BadParameters(RelaxKMError):
    pass


class InconsistentWindow(RelaxKMError):
    pass


class WindowEdge(RelaxKMError):
    pass


class DepthOverflow(RelaxKMError):
    pass


class OutOfDepth(RelaxKMError):
    pass


class RegionMismatch(RelaxKMError):
    pass


class WindowTooSmall(RelaxKMError):
    pass


class ParameterMismatch(RelaxKMError):
    pass
