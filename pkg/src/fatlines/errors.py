"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FatlinesError(Exception):
    """Base class for all errors raised by the package."""


class InputError(FatlinesError):
    """Malformed or invalid user input (CLI exit code 2)."""


class ComputationError(FatlinesError):
    """A computation could not be completed (CLI exit code 3)."""


class SchemaError(InputError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class DuplicateComponent(InputError):
    def __init__(self, first: int, second: int):
        super().__init__(f"components[{second}] duplicates components[{first}]")
        self.first = first
        self.second = second


class DuplicateLine(DuplicateComponent):
    pass


class DependentForms(InputError):
    pass


class NonPrimeModulus(InputError):
    pass


class FieldError(InputError):
    pass


class SingularChange(ComputationError):
    pass


class LineInHyperplane(ComputationError):
    pass


class GenericityFailure(ComputationError):
    pass


class DegenerateDraw(ComputationError):
    pass


class BoundExceeded(ComputationError):
    pass


class InvariantViolation(ComputationError):
    pass
