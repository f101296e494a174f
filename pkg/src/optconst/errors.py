"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class OptConstError(Exception):
    """Base class for all package errors."""


class DomainError(OptConstError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(OptConstError, ValueError):
    """An operation was called with an inconsistent combination of arguments."""


class UnsupportedModeError(UsageError):
    """The requested computation mode is not available in exact form."""


class NumericError(OptConstError, ArithmeticError):
    """A numerical procedure failed to converge or to bracket a root."""


class ResourceLimitError(OptConstError, RuntimeError):
    """An enumeration would exceed the configured evaluation budget."""

    def __init__(self, required: int, budget: int, what: str = "grid points"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} {what}, budget is {budget}"
        )
