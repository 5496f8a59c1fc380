"""Exception types raised by the estimation and benchmarking code."""


class SepcaError(Exception):
    """Base class for runtime failures of the algorithms in this package."""


class ConvergenceError(SepcaError):
    """An iterative solver did not reach its residual tolerance.

    Carries the last residual so callers can report how far off the
    solve was.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateIterateError(SepcaError):
    """A refinement iterate collapsed to the zero vector and cannot be
    normalized."""


class ConfigError(SepcaError, ValueError):
    """An experiment configuration failed validation."""
