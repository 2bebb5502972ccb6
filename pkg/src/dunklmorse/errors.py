"""Exception hierarchy shared by all modules."""


class DunklMorseError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DunklMorseError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(DunklMorseError, ArithmeticError):
    """A series or iteration failed to converge within its budget."""


class RangeError(DunklMorseError, OverflowError):
    """A result is not representable as a finite double."""


class UnphysicalConfigurationError(DomainError):
    """The effective potential has no confining wall (eta squared <= 0)."""


class NoBindingError(DomainError):
    """The effective attraction vanishes (xi squared <= 0)."""


class OutOfRangeError(DomainError):
    """A radial quantum number lies outside the admissible window."""

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class NumericalDifferentiationError(ConvergenceError):
    """Richardson-extrapolated finite differences did not settle."""


class DomainTooSmallError(DunklMorseError, RuntimeError):
    """An eigenvector leaks onto the boundary of the discretization box."""


class ConfigError(DunklMorseError, ValueError):
    """A run configuration cannot be resolved."""


class UnknownMoleculeError(ConfigError, LookupError):
    """Requested molecule is not in the built-in database."""
