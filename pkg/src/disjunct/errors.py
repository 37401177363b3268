"""Exception types shared across the package."""


class DisjunctError(Exception):
    """Base class for all errors raised by this package."""


class BudgetExceeded(DisjunctError):
    """An enumeration or exact computation would exceed its configured budget."""


class InputError(DisjunctError):
    """Malformed parameters or input files."""
