"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the region where a quantity is defined or trusted."""


class ContractError(ValueError):
    """Inputs are individually valid but inconsistent with each other."""


class InstabilityError(ArithmeticError):
    """An integration blew up.  ``x`` is where it was detected."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class ExponentOverflowError(OverflowError):
    """An exponential factor left the floating point range."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class NumericError(ArithmeticError):
    """A linear-algebra step failed or was too ill-conditioned to trust."""
