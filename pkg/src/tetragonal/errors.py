"""Exception hierarchy shared by every module."""


class TetragonalError(Exception):
    """Base class for all library errors."""


class EmptyPointSet(TetragonalError, ValueError):
    pass


class NotTwoDimensional(TetragonalError, ValueError):
    pass


class LatticeOverflowError(TetragonalError, OverflowError):
    """Raised when coordinates leave the range the int64 kernels handle exactly."""


class NotAColumnVector(TetragonalError, ValueError):
    pass


class NotInteriorPolygon(TetragonalError, ValueError):
    pass


class LaurentSyntaxError(TetragonalError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ZeroPolynomial(TetragonalError, ValueError):
    pass


class NotAFace(TetragonalError, ValueError):
    pass


class BadPrime(TetragonalError, ValueError):
    pass


class DegenerateElimination(TetragonalError, RuntimeError):
    """The elimination pipeline could not produce non-vanishing resultants."""

    def __init__(self, message, fallback_verdict=None):
        super().__init__(message)
        self.fallback_verdict = fallback_verdict


class NoInteriorHull(TetragonalError, ValueError):
    pass


class NotTetragonal(TetragonalError, ValueError):
    pass


class FiveSigmaUnsupported(TetragonalError, ValueError):
    pass


class NotWidthTwo(TetragonalError, ValueError):
    pass


class NotWidthTwoInterior(NotWidthTwo):
    pass


class FamilyParameterError(TetragonalError, ValueError):
    pass


class TrichotomyViolation(TetragonalError, AssertionError):
    pass


class ConsistencyError(TetragonalError, AssertionError):
    """Two independent characterizations of the same invariant disagree."""
