"""Exception hierarchy shared by all cosinelab modules."""


class CosineLabError(Exception):
    """Base class for every error raised by cosinelab."""


class InvalidInputError(CosineLabError, ValueError):
    """Malformed input: wrong shape, non-finite entries, bad type."""


class DomainError(CosineLabError, ValueError):
    """Argument lies outside the domain where the operation is defined."""


class NumericalFailureError(CosineLabError, ArithmeticError):
    """An iterative method did not converge.

    The achieved residual is kept on ``residual`` so callers can decide
    whether the partial answer is still useful.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class OverflowGuardError(CosineLabError, OverflowError):
    """An intermediate quantity crossed the overflow guard.

    ``value`` carries the quantity that triggered the guard (for example
    ``||t a||`` in :func:`cosinelab.algebra.matrix_cos`), ``partial`` an
    optional partial result.
    """

    def __init__(self, message, value=None, partial=None):
        super().__init__(message)
        self.value = value
        self.partial = partial


class SlowConvergenceError(NumericalFailureError):
    """Series hit its term cap before reaching the requested tolerance."""


class PrecisionBudgetError(CosineLabError, ValueError):
    """Request exceeds the precision carried by the stored constants."""

    def __init__(self, message, max_supported=None):
        super().__init__(message)
        self.max_supported = max_supported


class ArgumentTypeError(CosineLabError, TypeError):
    """Wrong kind of argument for a family (real number vs. group point)."""
