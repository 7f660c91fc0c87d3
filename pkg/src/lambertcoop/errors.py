"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ConvergenceError(ArithmeticError):
    """An iterative solver ran out of iterations before certifying its result."""

    def __init__(self, message, last_value=None, residual=None, iterations=None):
        super().__init__(message)
        self.last_value = last_value
        self.residual = residual
        self.iterations = iterations
