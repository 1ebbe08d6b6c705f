"""Exception types raised by the numerical routines."""


class NumericalError(ArithmeticError):
    """Base class for failures of a numerical procedure (not bad input)."""


class DivergentMomentError(NumericalError):
    """A requested moment integral does not converge."""


class QuadratureError(NumericalError):
    """Adaptive quadrature did not reach its tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class MinimizationError(NumericalError):
    """A one-dimensional minimization failed to converge or to bracket."""

    def __init__(self, message, bracket=None, last=None):
        super().__init__(message)
        self.bracket = bracket
        self.last = last


class DiscriminantError(NumericalError):
    """The stationarity condition of a Rayleigh quotient has no real root."""


class SolverError(NumericalError):
    """The eigenvalue solver failed or could not reach the requested accuracy."""
