"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: DomainError -> 1, GuardError and
FormatError -> 2.
"""


class SlopestabError(Exception):
    """Base class for all package errors."""


class DomainError(SlopestabError):
    """A mathematically invalid request (bad precondition, undefined value)."""


class GuardError(SlopestabError):
    """An enumeration or search budget was exceeded."""


class FormatError(SlopestabError):
    """Malformed serialized input."""
