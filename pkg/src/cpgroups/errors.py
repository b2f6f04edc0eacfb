"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class GroupError(Exception):
    """Base class for all errors raised by cpgroups."""


class ValidationError(GroupError):
    """Input data does not satisfy a structural requirement (not a group, not a
    homomorphism, element not central, ...)."""


class MixedParentError(ValidationError):
    """Two objects that must live in the same group do not."""


class BudgetError(GroupError):
    """An order or enumeration cap was exceeded; nothing is truncated silently."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class NotNormalError(ValidationError):
    def __init__(self, message: str, conjugator: int, element: int):
        super().__init__(message)
        self.conjugator = conjugator
        self.element = element


class HomomorphismError(ValidationError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class MethodDisagreement(GroupError):
    """Two decision procedures returned different answers for the same question."""

    def __init__(self, message: str, verdicts: tuple = ()):
        super().__init__(message)
        self.verdicts = verdicts


class SpecSyntaxError(GroupError):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        loc = f"line {line}, column {column}"
        if expected:
            message = f"{message} (expected one of: {', '.join(sorted(expected))})"
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.column = column
        self.expected = expected
