"""Exception types shared across the package."""


class TernlatError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrix(TernlatError):
    """Inversion was requested for a matrix of deficient rank."""


class ZeroDeterminant(TernlatError):
    """An integer matrix operation required a nonzero determinant."""


class NonIntegralScale(TernlatError):
    """Scaling a lattice left the integral / positive definite domain."""


class DiscMismatch(TernlatError):
    """Two lattices that must share a discriminant do not."""


class PreconditionViolated(TernlatError):
    """Arguments fail a documented hypothesis of the operation."""


class UnsupportedLocalShape(TernlatError):
    """A 2-adic structure outside the supported catalogue was encountered."""


class StructureError(TernlatError):
    """A constructed sublattice family has the wrong shape or size."""


class CompletenessSuspect(TernlatError):
    """A class list failed one of the weighted-sum completeness checks."""


class EndpointNotFound(TernlatError):
    """A graph edge endpoint is not isometric to any known class."""


class KernelClassUnknown(TernlatError):
    """A restricted genus was requested for an unknown kernel class."""


class WrongType(TernlatError):
    """An identity was invoked on a graph of the opposite O/E type."""


class CriteriaDisagree(TernlatError):
    """Independent O/E type criteria returned different answers."""
