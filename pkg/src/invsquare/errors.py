"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain an operation is defined on."""


class PoleError(ArithmeticError):
    """A closed form is evaluated at one of its poles (e.g. csc(pi*nu) at nu = 0)."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class NoRootError(ArithmeticError):
    """A bracket does not contain a sign change of the target function."""


class ConvergenceError(ArithmeticError):
    """An iterative or adaptive procedure hit its cap without meeting tolerance."""
