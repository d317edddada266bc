"""Shared exception types."""


class UfdlabError(Exception):
    """Base class for all library errors."""


class HypothesisError(UfdlabError):
    """A mathematical precondition of an operation is violated."""


class CapExceeded(UfdlabError):
    """An instance exceeds the configured size caps ("instance too large")."""
