"""Exception hierarchy shared across the package."""


class WalkError(Exception):
    """Base class for all package-specific errors."""


class ZeroStateError(WalkError):
    """Initial coin state has (numerically) zero norm."""


class DomainError(WalkError):
    """Argument lies outside the mathematical domain of the operation."""


class BinError(WalkError):
    """Bin width too small for the distribution's site spacing."""


class ResourceError(WalkError):
    """Requested time horizon exceeds the configured maximum."""


class QuadratureError(WalkError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class BranchError(WalkError):
    """Root selection of the transfer quadratic was not unique."""


class DegenerateError(WalkError):
    """Degenerate point (pole or removable parameter set) encountered."""
