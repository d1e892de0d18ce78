"""Exception hierarchy.

Each class carries a ``category`` used by the CLI for its
``ERROR:<category>:`` prefix.
"""

from __future__ import annotations


class PadicLabError(Exception):
    category = "internal"


class UsageError(PadicLabError, ValueError):
    """Bad argument: non-prime modulus, out-of-range index, invalid rule..."""

    category = "usage"


class ParseError(PadicLabError, ValueError):
    category = "parse"

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class NotSimpleRootError(PadicLabError, ValueError):
    """The starting value is not a simple root of f(0, Y).

    ``kind`` is ``"not_a_root"`` or ``"multiple_root"``.
    """

    category = "usage"

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


class NormalizationError(PadicLabError, ValueError):
    """A polynomial is not in the shape an operation requires."""

    category = "usage"

    def __init__(self, coefficient: str, message: str):
        self.coefficient = coefficient
        super().__init__(f"{coefficient}: {message}")


class NotSquarefreeError(PadicLabError, ValueError):
    category = "usage"


class DigitStreamError(PadicLabError, RuntimeError):
    category = "internal"


class GuardExceeded(UsageError):
    """A sequence term lies beyond the configured size guard."""
