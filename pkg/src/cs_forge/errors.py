"""Exception types raised across the package.

Everything derives from :class:`CSForgeError` so callers can catch the whole
family at once.  Input-validation errors also subclass ``ValueError``.
"""


class CSForgeError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(CSForgeError, ValueError):
    """Operands have incompatible dimensions."""


class InvalidInput(CSForgeError, ValueError):
    """An input is malformed (empty, non-finite, wrong rank, ...)."""


class NegativeBaseNonIntegerExponent(CSForgeError, ValueError):
    """A non-integer power was requested of a vector with negative entries."""


class ExponentOutOfRange(CSForgeError, ValueError):
    """An exponent lies outside the range where the operation is defined."""


class NegativeInput(CSForgeError, ValueError):
    """A quantity required to be non-negative was negative."""


class NonPositiveEntries(CSForgeError, ValueError):
    """Strictly positive entries were required."""


class NotSquare(CSForgeError, ValueError):
    """A square matrix was required."""


class NotSymmetric(CSForgeError, ValueError):
    """A symmetric matrix was required."""


class NotAProjection(CSForgeError, ValueError):
    """A matrix is not an orthogonal projection."""


class InvalidPermutation(CSForgeError, ValueError):
    """A permutation is not a bijection on ``{1, ..., m}``."""


class PermutationLengthMismatch(CSForgeError, ValueError):
    """A permutation has the wrong length for the tensor it acts on."""


class SumMismatch(CSForgeError, ValueError):
    """Composition parts do not sum to the stated total."""


class SizeGuardExceeded(CSForgeError, ValueError):
    """A dense computation would exceed its size guard."""


class ConvergenceFailure(CSForgeError, ArithmeticError):
    """An iterative method hit its iteration cap."""

    def __init__(self, msg, sweeps=None, residual=None):
        super().__init__(msg)
        self.sweeps = sweeps
        self.residual = residual


class DegenerateDraw(CSForgeError, ArithmeticError):
    """Random sampling repeatedly produced a zero vector."""


class UnknownChecker(CSForgeError, KeyError):
    """No checker is registered under the requested name."""


class ParseError(CSForgeError, ValueError):
    """Text input could not be parsed."""
