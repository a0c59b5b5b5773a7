"""Exception types raised by htensor."""


class HTensorError(ValueError):
    """Base class for all domain errors."""


class ArityMismatch(HTensorError):
    pass


class IndexOutOfRange(HTensorError):
    pass


class DuplicateEntry(HTensorError):
    pass


class DimensionMismatch(HTensorError):
    pass


class NotHermitian(HTensorError):
    pass


class NotMatrix(HTensorError):
    pass


class ZeroVector(HTensorError):
    pass


class ConvergenceFailure(HTensorError):
    pass


class NonRealDiagonal(HTensorError):
    pass


class BadSplit(HTensorError):
    pass


class NonpositiveBound(HTensorError):
    pass


class SymmetryViolation(HTensorError):
    pass


class ShapeMismatch(HTensorError):
    pass


class NotHermitianAfterAssembly(HTensorError):
    pass


class NoThresholdFound(HTensorError):
    pass


class FormatError(HTensorError):
    """Malformed tensor / curvature file."""


class DimensionTooSmallWarning(UserWarning):
    """Brauer-type sets need n >= 2; the Gershgorin set is returned instead."""
