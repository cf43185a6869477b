"""Exception types shared across the package."""


class BudgetError(Exception):
    """An enumeration would exceed its configured budget.

    ``size`` carries the offending count (e.g. the number of
    counter-profiles that would have to be visited).
    """

    def __init__(self, message, size):
        super().__init__(message)
        self.size = size


class RuleMismatchError(ValueError):
    """An engine was invoked on an election with the wrong rule parameter k."""


class StrategyValidationError(ValueError):
    """A strategy set violates the preconditions of the requested engine."""
