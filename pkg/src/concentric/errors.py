"""Exception types shared across the package."""


class DataError(ValueError):
    """Malformed or inconsistent input data (files, uploads, labels)."""


class DomainError(ValueError):
    """An operation's mathematical precondition is violated."""
