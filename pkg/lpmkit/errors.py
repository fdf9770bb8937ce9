"""Exception hierarchy for lpmkit.

Every failure raised by the library derives from :class:`LpmError`, so
callers (the CLI in particular) can separate domain failures from bugs.
Violated identities are never raised: the check functions report them.
"""

from typing import Any, Iterable, Optional


class LpmError(Exception):
    """Base class for all lpmkit errors."""
    pass


class ParseError(LpmError):
    """Syntax or semantic error in a text format, with its position.

    Attributes:
        line: 1-based line number (0 when the position is unknown)
        column: 1-based column number (0 when the position is unknown)
        message: Human-readable description without the position prefix
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line:
            return f"line {self.line}, column {self.column}: {self.message}"
        return self.message


class EvaluationError(LpmError):
    """An operation could not be evaluated.

    Raised when no rule clause matches, a result leaves the carrier, an
    exact halving meets an odd value or a table index is out of range.

    Attributes:
        operation: 'mul' or 'ldiv' (or 'term' for term evaluation)
        operands: The operands the operation was applied to
    """

    def __init__(self, message: str, operation: str = "", operands: tuple = ()):
        self.operation = operation
        self.operands = tuple(operands)
        super().__init__(message)


class ClosureError(LpmError):
    """A subcarrier is not closed under the operations.

    Attributes:
        operation: The operation leaving the subcarrier ('mul', 'ldiv' or 'unit')
        pair: The offending operands
        value: The value found outside the subcarrier (None when the
            operation could not be evaluated)
    """

    def __init__(self, operation: str, pair: tuple, value: Any):
        self.operation = operation
        self.pair = tuple(pair)
        self.value = value
        outcome = "fails to evaluate" if value is None else f"= {value}"
        super().__init__(
            f"subcarrier not closed under {operation}: {operation}{self.pair} {outcome}"
        )


class PreconditionError(LpmError):
    """The preconditions of a construction do not hold.

    Attributes:
        report: The failed check report carrying the counterexample
    """

    def __init__(self, message: str, report: Optional[Any] = None):
        self.report = report
        super().__init__(message)


class UnknownBuiltinError(LpmError):
    """A builtin magma name is not registered."""

    def __init__(self, name: str, available: Iterable[str]):
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"unknown builtin '{name}'; available: {', '.join(self.available)}"
        )


class EnumerationLimitError(LpmError):
    """The requested census order exceeds the soft limit."""
    pass
