"""Exceptions raised by orbiloop.

Every exception carries the exit code the command line front end returns for it.
"""

__all__ = [
    "OrbiloopError",
    "SchemaError",
    "PreconditionError",
    "CostGuardError",
    "InternalAssertionError",
]


class OrbiloopError(Exception):
    """Base class of all orbiloop errors."""

    exit_code = 1


class SchemaError(OrbiloopError, ValueError):
    """An input document does not match its schema.

    Args:
        message (str): What is wrong.
        path (str, optional): JSON pointer to the offending value.
    """

    exit_code = 2

    def __init__(self, message: str, path: str = "/"):
        super().__init__(f"{path}: {message}")
        self.message = message
        self.path = path


class PreconditionError(OrbiloopError, ValueError):
    """An operation was called outside of its documented preconditions.

    Args:
        precondition (str): Short name of the violated precondition.
        message (str, optional): Human readable detail.
        witness (optional): Offending data (a tuple of ids, a value, ...).
    """

    exit_code = 3

    def __init__(self, precondition: str, message: str = "", witness=None):
        text = precondition if not message else f"{precondition}: {message}"
        if witness is not None:
            text += f" (witness: {witness!r})"
        super().__init__(text)
        self.precondition = precondition
        self.witness = witness


class CostGuardError(PreconditionError):
    """A table-size guard was exceeded."""


class InternalAssertionError(OrbiloopError, AssertionError):
    """A consistency check failed that only an arithmetic bug can trip."""

    exit_code = 1
