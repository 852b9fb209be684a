"""Exception hierarchy shared by every module of the package."""


class ComplexTreeError(Exception):
    """Base class for all errors raised by :mod:`complextrees`."""


class AddressParseError(ComplexTreeError, ValueError):
    """Malformed address text. ``offset`` is the 0-based position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class DomainError(ComplexTreeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class LetterRangeError(DomainError):
    """A letter index does not exist in the alphabet it is evaluated against."""


class SingularParameterError(DomainError):
    """The family parameter hits a pole (z = 0 or z = -1)."""


class SingularityError(DomainError):
    """A periodic tail has product numerically equal to 1."""


class BudgetExceededError(ComplexTreeError, RuntimeError):
    """An enumeration would exceed the configured point budget."""
