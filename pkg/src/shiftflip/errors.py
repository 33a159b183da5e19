"""Exception hierarchy.

Each class maps to one CLI exit code (see :mod:`shiftflip.cli`).
"""


class ShiftFlipError(Exception):
    exit_code = 4


class DomainError(ShiftFlipError, ValueError):
    """An argument is outside the domain of the operation."""

    exit_code = 1


class PreconditionError(ShiftFlipError):
    """A documented precondition of the operation does not hold."""

    exit_code = 2


class ValidationError(ShiftFlipError):
    exit_code = 2


class SearchBoundError(ShiftFlipError):
    """A bounded search, horizon or size cap was exhausted."""

    exit_code = 3


class ConstructionError(ShiftFlipError):
    """A constructed object failed one of its verified postconditions."""

    exit_code = 4


class ConsistencyError(ShiftFlipError):
    """Internal cross-check disagreed; indicates a bug or corrupted data."""

    exit_code = 4
