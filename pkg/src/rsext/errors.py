"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedOrderError(ValueError):
    """A remainder/coefficient order that the implementation does not derive."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole (zeta at s=1, Gamma at -n)."""


class BudgetExceededError(RuntimeError):
    """A grid or scan request would exceed the configured point budget."""


class AccuracyWarning(UserWarning):
    """Evaluation outside the range where the asymptotic formulas are reliable."""
