"""Exception types for numerical-contract failures (as opposed to usage errors)."""


class ComputationError(Exception):
    """Base class for failures the CLI reports with exit code 3."""


class OverflowLabel(ComputationError):
    """Integer label of a multi-index exceeds the signed 64-bit range."""


class MatrixTooLarge(ComputationError):
    """Divisor closure exceeds the configured matrix dimension cap."""


class WidthTooLarge(ComputationError):
    """Too many active variables for tensor-grid quadrature."""


class NoConvergence(ComputationError):
    """Adaptive quadrature did not meet the tolerance within its budget."""


class NonFinite(ComputationError):
    """Matrix input contains NaN or infinite entries."""
