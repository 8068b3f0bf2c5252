"""Shared exception types for certified computations."""


class PrecisionError(ArithmeticError):
    """Raised when a result cannot be certified at the working precision.

    Retryable: callers may re-invoke with a higher precision.
    """


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of budget before certifying a witness."""

    def __init__(self, message, budget=None, last_tried=None):
        super().__init__(message)
        self.budget = budget
        self.last_tried = last_tried


class NoBracket(ValueError):
    """Value solving failed because no sign-change bracket exists."""


class WindowViolation(ValueError):
    """A point lies outside the interval where a witness formula is valid."""

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window
