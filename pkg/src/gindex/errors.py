"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GIndexError(Exception):
    """Base class for all errors raised by the package."""


class InvalidInput(GIndexError, ValueError):
    """Malformed or out-of-range input."""


class InvalidConductor(InvalidInput):
    pass


class ConductorMismatch(InvalidInput):
    pass


class Pole(GIndexError, ZeroDivisionError):
    """A trigonometric constant was requested at a pole (k = 0 mod m)."""


class InvalidRotationClass(InvalidInput):
    pass


class UnsupportedParameter(InvalidInput):
    pass


class InconsistentData(GIndexError):
    """Input passes validation but leads to an impossible configuration."""


class InconsistentCharacter(InconsistentData):
    pass


class InconsistentFixedData(InconsistentData):
    pass


class InconsistentInputs(InconsistentData):
    pass


class IncompleteInput(InvalidInput):
    pass


class InternalError(GIndexError, AssertionError):
    """A mathematical guarantee was violated. Never expected to fire."""


class ConventionMismatch(GIndexError):
    """No sign or rotation convention reproduces the reference values."""

    def __init__(self, message: str, table: object = None) -> None:
        super().__init__(message)
        self.table = table
