"""Exception hierarchy shared by every ffnr module."""


class FFNRError(Exception):
    """Base class for all library errors."""


class FieldError(FFNRError, ValueError):
    pass


class NotOddPrime(FieldError):
    pass


class NotIrreducibleOverride(FieldError):
    pass


class AlphaIsSquare(FieldError):
    pass


class BoundExceeded(FieldError):
    pass


class ElementParseError(FieldError):
    pass


class DivisionByZero(FFNRError, ZeroDivisionError):
    pass


class NotAQuadratic(FFNRError, ValueError):
    pass


class NoEigenvalueInField(FFNRError):
    pass


class AllEigenvectorsIsotropic(FFNRError):
    pass


class NotOrbitAligned(FFNRError):
    """Raised when a fiber count is not a multiple of q+1 (always a bug)."""


class CoefficientNotInBaseField(FFNRError):
    pass


class SingularForm(FFNRError, ValueError):
    pass


class UnclassifiedSingularForm(FFNRError):
    pass


class DegenerateZeta(FFNRError, ValueError):
    pass


class ZeroZeta(FFNRError, ValueError):
    pass


class SingularInput(FFNRError, ValueError):
    pass


class WrongClass(FFNRError, ValueError):
    pass
