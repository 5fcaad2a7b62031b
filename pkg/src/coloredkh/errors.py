"""Exception types shared across the package."""


class ColoredKhError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ColoredKhError, ValueError):
    """Input data violates a documented precondition."""


class InvariantViolation(ColoredKhError):
    """A structural identity (d^2 = 0, anticommutation, ...) failed."""


class NotRealizable(ColoredKhError):
    """A Gauss phrase has no planar realization."""


class BudgetExceeded(ColoredKhError):
    """A diagram is too large for the configured crossing budget."""


class MultiComponent(ColoredKhError, ValueError):
    """A knot-only operation received a link."""
