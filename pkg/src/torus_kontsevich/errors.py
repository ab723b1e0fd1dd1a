"""Exception hierarchy shared by all modules."""


class TorusKontsevichError(Exception):
    """Base class for errors raised by this package."""


class DivisionError(TorusKontsevichError, ArithmeticError):
    """An exact division was requested but the divisor does not divide."""


class ParameterError(TorusKontsevichError, ValueError):
    """Invalid knot, covering or truncation parameters."""


class PolarOverflowError(TorusKontsevichError):
    """A series product would exceed the configured polar depth limit."""


class SeriesDomainError(TorusKontsevichError, ValueError):
    """A series operation was applied outside its domain."""


class StructureError(TorusKontsevichError, ValueError):
    """A diagram part does not have the shape an operation requires."""


class LiftDomainError(TorusKontsevichError, ValueError):
    """A denominator factor shares a divisor with the covering order."""


class VerificationError(TorusKontsevichError):
    """Two independent computations of the same quantity disagree."""
