class SurjunctError(Exception):
    """Base class for library errors."""


class GroupError(SurjunctError, ValueError):
    pass


class RuleError(SurjunctError, ValueError):
    pass


class BudgetExceeded(SurjunctError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


class PropertyViolation(SurjunctError):
    """A proven property failed on a concrete instance; carries the witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInIdeal(SurjunctError, ValueError):
    pass


class ZeroElement(SurjunctError, ValueError):
    pass
