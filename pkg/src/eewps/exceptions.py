"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonConvergent(RuntimeError):
    """A truncated series or quadrature failed its tail criterion.

    Raised instead of returning a value whose error cannot be bounded.
    """


class NoConvergence(RuntimeError):
    """An iterative fit exhausted its budget without meeting tolerance."""

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = list(history) if history is not None else []


class SingularInformation(RuntimeError):
    """The observed information matrix is not positive definite."""
