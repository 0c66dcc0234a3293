"""Exception hierarchy for effdirac."""


class EffDiracError(Exception):
    """Base class for all package errors."""


class ConfigError(EffDiracError, ValueError):
    """A configuration or data file could not be parsed or validated."""


class DataError(EffDiracError, LookupError):
    """Required tabulated data is missing."""


class MissingBetheEntry(DataError):
    def __init__(self, n: int, l: int):
        super().__init__(f"no Bethe logarithm for (n={n}, l={l})")
        self.n = n
        self.l = l


class DomainError(EffDiracError, ValueError):
    """Arguments outside the domain of an operation."""


class SupercriticalError(DomainError):
    """Coupling large enough that the indicial exponent is not real."""


class TerminationError(EffDiracError, ArithmeticError):
    """The radial series does not terminate at the supplied energy."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class SolveError(EffDiracError, ArithmeticError):
    """No acceptable eigenvalue, or the two solution routes disagree."""


class NumericalError(EffDiracError, ArithmeticError):
    """Ill-conditioned numerical procedure."""


class IdempotencyError(EffDiracError, ValueError):
    """A correction was applied to a factor that already carries it."""
