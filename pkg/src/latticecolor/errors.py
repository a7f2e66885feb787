"""Error types shared across the package."""


class InputFormatError(ValueError):
    """Raised when an input file or JSON document is malformed or ill-typed."""


class BudgetExceeded(RuntimeError):
    """Raised internally when a search exceeds its step budget."""
