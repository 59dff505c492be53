"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the validity domain of an operation or parameter set."""


class BracketingError(ValueError):
    """Root bracket does not straddle a sign change."""


class ConvergenceError(RuntimeError):
    """Iterative scheme exhausted its budget.

    When raised by the quadrature routine, ``best`` holds the best available
    QuadratureResult so callers can inspect how far it got.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class GridMismatchError(ValueError):
    """Two fields do not share a grid and time stamp."""


class GridTooSmallError(RuntimeError):
    """Requested evolution would push the state into the grid boundary."""
