"""Shared exception types.

All of these subclass ValueError so callers that only care about "bad
input" can catch one thing; the CLI maps any of them to exit code 1.
"""


class ConfigurationError(ValueError):
    """A build/run parameter is outside its supported range."""


class DomainError(ValueError):
    """An argument violates a mathematical precondition (e.g. not squarefree)."""


class RangeError(ValueError):
    """A value or enumeration budget exceeds what the implementation supports."""


class InsufficientPopulationError(RangeError):
    """A sampling request targets an empty or degenerate population."""
