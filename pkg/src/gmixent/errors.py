"""Exception types shared across the library."""


class GmixentError(Exception):
    """Base class for library-specific failures."""


class ConfigError(GmixentError):
    """A mixture config (file or preset name) was rejected.

    Carries a 1-based line number when the offending location in the file
    is known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NumericalDomainError(GmixentError):
    """Inputs violate a numerical-validity precondition.

    Examples: Taylor scale below half the density maximum, a fit-curve
    point outside the fit interval, a polynomial order the moment-matrix
    solver refuses.
    """


class UnsupportedDimensionError(NumericalDomainError):
    """Operation is only implemented for low dimensions."""


class ResourceLimitError(GmixentError):
    """Requested enumeration would exceed the configured term budget."""


class ConvergenceError(GmixentError):
    """Iterative search failed to converge; carries the best value found."""

    def __init__(self, message, best_point=None, best_value=None):
        super().__init__(message)
        self.best_point = best_point
        self.best_value = best_value
