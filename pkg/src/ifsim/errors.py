"""Exception hierarchy shared by all ifsim modules."""
from __future__ import annotations

from dataclasses import dataclass


class IfsimError(Exception):
    """Base class for all errors raised by this package."""


@dataclass(frozen=True)
class ValidationIssue:
    """A single validation problem, with enough context to locate it."""

    code: str
    message: str
    location: str = ""

    def __str__(self) -> str:
        if self.location:
            return f"{self.code} at {self.location}: {self.message}"
        return f"{self.code}: {self.message}"


class ModelValidationError(IfsimError):
    """Raised when a parsed model violates its invariants.

    Carries *all* violations found, not just the first one.
    """

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class UnknownStateError(IfsimError):
    pass


class UnknownActionError(IfsimError):
    pass


class UnknownCheatTargetError(IfsimError):
    pass


class NotComposableError(IfsimError):
    pass


class IncompatibleError(IfsimError):
    """The initial product state is incompatible.

    ``witness`` is a list of output actions leading to an error state.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = list(witness or [])


class AlphabetPreconditionError(IfsimError):
    """The refinement alphabet precondition fails on declared signatures."""


class NotAPartitionError(IfsimError):
    pass


class TooLargeError(IfsimError):
    """Input exceeds a solver size guard; carries a size diagnostic."""
