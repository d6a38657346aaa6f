"""Shared exception types.

Errors fall into three camps: usage mistakes (mixed contexts, bad
parameters), arithmetic faults (division by zero in a field), and
resource guards tripping before a computation can exhaust memory.
"""


class UsageError(ValueError):
    """Caller passed inconsistent or invalid arguments."""


class ContextMismatch(UsageError):
    """Operands belong to different fields, variable sets, or orders."""


class FieldZeroDivision(ZeroDivisionError):
    """Inversion or division by the zero element of a finite field."""


class ResourceLimit(RuntimeError):
    """A configured cap (terms, pairs, exponents, enumeration) was exceeded."""


class ParseError(ValueError):
    """Syntax error in polynomial or file input, with a position."""

    def __init__(self, message: str, position: int = -1):
        self.position = position
        if position >= 0:
            message = f"{message} (at position {position})"
        super().__init__(message)
