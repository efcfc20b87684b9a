"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """A caller-supplied value violates an operation's precondition."""


class CapacityError(RuntimeError):
    """An input is structurally valid but exceeds a configured size guard."""


class ParseError(InputError):
    """Concrete-syntax error, with position and the tokens that were expected."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        detail = f"{message} at position {position}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)
        self.position = position
        self.expected = expected
