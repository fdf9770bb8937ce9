"""Data model for LPM-like structures.

Two concrete representations share the :class:`Magma` interface:

* :class:`FiniteMagma` -- carrier ``{0..n-1}`` with a distinguished unit and
  two operation tables;
* :class:`RuleMagma` -- carrier N or Z with both operations given by ordered
  lists of guarded affine clauses (first match wins).

Neither constructor validates identities (1) and (3): broken structures load
fine and are diagnosed by :mod:`lpmkit.checks`.
"""

import operator
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from .errors import EvaluationError


Table = Tuple[Tuple[int, ...], ...]


class Carrier(Enum):
    """Carriers available to rule magmas."""
    N = "N"
    Z = "Z"

    def contains(self, value: int) -> bool:
        return self is Carrier.Z or value >= 0


@dataclass(frozen=True)
class Window:
    """Inclusive integer window restricting an infinite carrier.

    Attributes:
        lo: Lower bound (inclusive)
        hi: Upper bound (inclusive)
    """
    lo: int
    hi: int

    def __post_init__(self):
        """Validate bounds."""
        if self.lo > self.hi:
            raise ValueError(f"Window lower bound {self.lo} exceeds upper bound {self.hi}")

    def clamp(self, carrier: Carrier) -> "Window":
        """Clamp the window to a carrier (lower bound 0 for N)."""
        if carrier is Carrier.N and self.lo < 0:
            if self.hi < 0:
                raise ValueError(f"Window {self} does not meet the carrier N")
            return Window(0, self.hi)
        return self

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and self.lo <= value <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def to_dict(self) -> Dict[str, int]:
        """Convert to dictionary for JSON serialization."""
        return {'lo': self.lo, 'hi': self.hi}


# Guard atoms ---------------------------------------------------------------

COMPARISONS: Dict[str, Callable[[int, int], bool]] = {
    '==': operator.eq,
    '!=': operator.ne,
    '>': operator.gt,
    '<': operator.lt,
    '>=': operator.ge,
    '<=': operator.le,
}

VARIABLES = ('x', 'y')


@dataclass(frozen=True)
class Comparison:
    """Guard atom comparing a variable with 0 or with the other variable.

    Attributes:
        left: 'x' or 'y'
        op: One of ``== != > < >= <=``
        right: '0', 'x' or 'y' (never equal to ``left``)
    """
    left: str
    op: str
    right: str

    def __post_init__(self):
        """Validate the atom against the allowed set."""
        if self.left not in VARIABLES:
            raise ValueError(f"Comparison must start with x or y, got {self.left!r}")
        if self.op not in COMPARISONS:
            raise ValueError(f"Unknown comparison operator {self.op!r}")
        if self.right not in ('0',) + VARIABLES or self.right == self.left:
            raise ValueError(f"Cannot compare {self.left} with {self.right!r}")
        if self.right != '0' and self.op not in ('==', '!='):
            raise ValueError("Only == and != may compare x with y")

    def compile(self) -> Callable[[int, int], bool]:
        """Closure over ``(x, y)`` evaluating the atom."""
        fn = COMPARISONS[self.op]
        if self.right == '0':
            if self.left == 'x':
                return lambda x, y: fn(x, 0)
            return lambda x, y: fn(y, 0)
        if self.left == 'x':
            return lambda x, y: fn(x, y)
        return lambda x, y: fn(y, x)

    def holds(self, x: int, y: int) -> bool:
        return self.compile()(x, y)

    def __str__(self) -> str:
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class Parity:
    """Guard atom ``even(v)`` or ``odd(v)``."""
    variable: str
    even: bool

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"Parity atom needs x or y, got {self.variable!r}")

    def compile(self) -> Callable[[int, int], bool]:
        remainder = 0 if self.even else 1
        if self.variable == 'x':
            return lambda x, y: x % 2 == remainder
        return lambda x, y: y % 2 == remainder

    def holds(self, x: int, y: int) -> bool:
        return self.compile()(x, y)

    def __str__(self) -> str:
        return f"{'even' if self.even else 'odd'}({self.variable})"


Atom = Any  # Comparison | Parity


@dataclass(frozen=True)
class Affine:
    """Result expression ``a*x + b*y + c``, optionally halved exactly.

    Attributes:
        a: Coefficient of x
        b: Coefficient of y
        c: Constant term
        halve: Whether the value is divided by 2 (must be exact)
    """
    a: int = 0
    b: int = 0
    c: int = 0
    halve: bool = False

    def evaluate(self, x: int, y: int) -> int:
        value = self.a * x + self.b * y + self.c
        if self.halve:
            if value % 2:
                raise EvaluationError(
                    f"inexact division by 2: {self.linear_text()} = {value} at x={x}, y={y}"
                )
            return value // 2
        return value

    def linear_text(self) -> str:
        """Render the affine part without the halving."""
        parts: List[str] = []
        for coefficient, name in ((self.a, 'x'), (self.b, 'y'), (self.c, '')):
            if coefficient == 0:
                continue
            magnitude = abs(coefficient)
            if name:
                body = name if magnitude == 1 else f"{magnitude}*{name}"
            else:
                body = str(magnitude)
            if not parts:
                parts.append(f"-{body}" if coefficient < 0 else body)
            else:
                parts.append(f"- {body}" if coefficient < 0 else f"+ {body}")
        return ' '.join(parts) if parts else '0'

    def is_single_term(self) -> bool:
        return [self.a, self.b, self.c].count(0) >= 2

    def __str__(self) -> str:
        text = self.linear_text()
        if not self.halve:
            return text
        if self.is_single_term() and not text.startswith('-'):
            return f"{text} / 2"
        return f"({text}) / 2"


@dataclass(frozen=True)
class Clause:
    """Guarded piecewise clause ``guard -> result``.

    An empty guard always holds.
    """
    guard: Tuple[Atom, ...]
    result: Affine

    def compile_guard(self) -> Callable[[int, int], bool]:
        """Conjunction of the compiled atoms."""
        checks = tuple(atom.compile() for atom in self.guard)

        def guard(x: int, y: int) -> bool:
            for check in checks:
                if not check(x, y):
                    return False
            return True

        return guard

    def matches(self, x: int, y: int) -> bool:
        return self.compile_guard()(x, y)

    def __str__(self) -> str:
        guard = ' && '.join(str(atom) for atom in self.guard) or 'true'
        return f"{guard} -> {self.result}"


def _compile_clause(clause: Clause) -> Tuple[Callable[[int, int], bool], Callable[[int, int], int]]:
    """Turn a clause into a (guard, result) pair of closures."""
    guard = clause.compile_guard()
    result = clause.result
    if not result.halve:
        a, b, c = result.a, result.b, result.c
        return guard, lambda x, y: a * x + b * y + c
    return guard, result.evaluate


# Magmas --------------------------------------------------------------------

class Magma(ABC):
    """Interface shared by every magma representation.

    Elements are plain Python integers. ``mul(a, b)`` is ``a * b`` and
    ``ldiv(a, b)`` is ``a \\ b``.
    """

    name: str

    @property
    @abstractmethod
    def unit(self) -> int:
        """The distinguished unit element e."""

    @property
    @abstractmethod
    def is_finite(self) -> bool:
        """Whether the carrier is finite and can be scanned exhaustively."""

    @abstractmethod
    def elements(self) -> Tuple[int, ...]:
        """All carrier elements in ascending order (finite magmas only)."""

    @abstractmethod
    def contains(self, value: int) -> bool:
        """Whether ``value`` belongs to the carrier."""

    @abstractmethod
    def mul(self, a: int, b: int) -> int:
        """Evaluate ``a * b``."""

    @abstractmethod
    def ldiv(self, a: int, b: int) -> int:
        """Evaluate ``a \\ b``."""

    @property
    def carrier_label(self) -> str:
        return f"{{0..{len(self.elements()) - 1}}}" if self.is_finite else "?"


@dataclass(frozen=True)
class FiniteMagma(Magma):
    """Finite structure on ``{0..n-1}`` given by two operation tables.

    Attributes:
        name: Display name
        size: Carrier size n
        unit_index: Index of the unit element
        mul_table: n x n multiplication table, ``mul_table[a][b] = a * b``
        ldiv_table: n x n left-division table, ``ldiv_table[a][b] = a \\ b``
    """
    name: str
    size: int
    unit_index: int
    mul_table: Optional[Table]
    ldiv_table: Table

    def __post_init__(self):
        """Validate shape and entry ranges (not identities)."""
        if self.size < 1:
            raise ValueError("Magma size must be positive")
        if not 0 <= self.unit_index < self.size:
            raise ValueError(f"Unit {self.unit_index} out of range for size {self.size}")
        for label, table in (('mul', self.mul_table), ('ldiv', self.ldiv_table)):
            if table is None and label == 'mul':
                continue
            if len(table) != self.size or any(len(row) != self.size for row in table):
                raise ValueError(f"{label} table must be {self.size}x{self.size}")
            for row in table:
                for entry in row:
                    if not 0 <= entry < self.size:
                        raise ValueError(f"{label} table entry {entry} out of range")

    @classmethod
    def from_rows(cls, name: str, unit: int, mul: Optional[List[List[int]]],
                  ldiv: List[List[int]]) -> "FiniteMagma":
        """Build a magma from nested lists."""
        freeze = lambda rows: tuple(tuple(row) for row in rows)
        return cls(name=name, size=len(ldiv), unit_index=unit,
                   mul_table=None if mul is None else freeze(mul),
                   ldiv_table=freeze(ldiv))

    def with_entry(self, operation: str, a: int, b: int, value: int) -> "FiniteMagma":
        """Return a copy with one table cell replaced (used to plant defects)."""
        table = self.mul_table if operation == 'mul' else self.ldiv_table
        rows = [list(row) for row in table]
        rows[a][b] = value
        frozen = tuple(tuple(row) for row in rows)
        if operation == 'mul':
            return FiniteMagma(self.name, self.size, self.unit_index, frozen, self.ldiv_table)
        return FiniteMagma(self.name, self.size, self.unit_index, self.mul_table, frozen)

    @property
    def unit(self) -> int:
        return self.unit_index

    @property
    def is_finite(self) -> bool:
        return True

    def elements(self) -> Tuple[int, ...]:
        return tuple(range(self.size))

    def contains(self, value: int) -> bool:
        return isinstance(value, int) and 0 <= value < self.size

    def _lookup(self, operation: str, table: Optional[Table], a: int, b: int) -> int:
        if table is None:
            raise EvaluationError(f"{self.name} defines no {operation} table", operation, (a, b))
        if not (self.contains(a) and self.contains(b)):
            raise EvaluationError(
                f"index out of range in {operation}({a}, {b}) for size {self.size}",
                operation, (a, b)
            )
        return table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._lookup('mul', self.mul_table, a, b)

    def ldiv(self, a: int, b: int) -> int:
        return self._lookup('ldiv', self.ldiv_table, a, b)

    def __str__(self) -> str:
        return f"FiniteMagma(name='{self.name}', size={self.size}, unit={self.unit_index})"


@dataclass(frozen=True)
class RuleMagma(Magma):
    """Structure on N or Z whose operations are guarded piecewise rules.

    The unit is always 0. Evaluation picks the first clause whose guard
    holds; a result outside the carrier is an error.

    Attributes:
        name: Display name
        carrier: Carrier.N or Carrier.Z
        mul_clauses: Ordered clauses for ``x * y``
        ldiv_clauses: Ordered clauses for ``x \\ y``
    """
    name: str
    carrier: Carrier
    mul_clauses: Tuple[Clause, ...]
    ldiv_clauses: Tuple[Clause, ...]
    _compiled: Dict[str, list] = field(default_factory=dict, init=False,
                                       repr=False, compare=False, hash=False)

    def __post_init__(self):
        """Compile clause lists into closures."""
        self._compiled['mul'] = [_compile_clause(c) for c in self.mul_clauses]
        self._compiled['ldiv'] = [_compile_clause(c) for c in self.ldiv_clauses]

    @property
    def unit(self) -> int:
        return 0

    @property
    def is_finite(self) -> bool:
        return False

    def elements(self) -> Tuple[int, ...]:
        raise TypeError(f"{self.name} has an infinite carrier; use a window")

    def contains(self, value: int) -> bool:
        return isinstance(value, int) and self.carrier.contains(value)

    @property
    def carrier_label(self) -> str:
        return self.carrier.value

    def _apply(self, operation: str, x: int, y: int) -> int:
        if not (self.contains(x) and self.contains(y)):
            raise EvaluationError(
                f"{operation}({x}, {y}): operand outside carrier {self.carrier.value}",
                operation, (x, y)
            )
        compiled = self._compiled[operation]
        if not compiled:
            raise EvaluationError(f"{self.name} defines no {operation} clauses", operation, (x, y))
        for guard, result in compiled:
            if guard(x, y):
                try:
                    value = result(x, y)
                except EvaluationError as e:
                    raise EvaluationError(f"{operation}({x}, {y}): {e}", operation, (x, y)) from e
                if not self.carrier.contains(value):
                    raise EvaluationError(
                        f"{operation}({x}, {y}) = {value} lies outside carrier {self.carrier.value}",
                        operation, (x, y)
                    )
                return value
        raise EvaluationError(f"no {operation} clause matches ({x}, {y})", operation, (x, y))

    def mul(self, a: int, b: int) -> int:
        return self._apply('mul', a, b)

    def ldiv(self, a: int, b: int) -> int:
        return self._apply('ldiv', a, b)


def mul(magma: Magma, a: int, b: int) -> int:
    """Evaluate ``a * b`` in ``magma``."""
    return magma.mul(a, b)


def ldiv(magma: Magma, a: int, b: int) -> int:
    """Evaluate ``a \\ b`` in ``magma``."""
    return magma.ldiv(a, b)


# Domains -------------------------------------------------------------------

@dataclass(frozen=True)
class Domain:
    """The finite set of elements a check scans, stamped on every report.

    Attributes:
        elements: Elements in ascending scan order
        label: Human-readable description ('full carrier' or the window)
        exhaustive: True when ``elements`` is the whole carrier
    """
    elements: Tuple[int, ...]
    label: str
    exhaustive: bool

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'label': self.label,
            'exhaustive': self.exhaustive,
            'count': len(self.elements),
        }

    def __str__(self) -> str:
        return self.label


def resolve_domain(magma: Magma, window: Optional[Window] = None) -> Domain:
    """Resolve the scan domain of a check.

    Finite magmas default to the full carrier; a window restricts them.
    Infinite carriers require a window, clamped to the carrier.

    Raises:
        ValueError: If an infinite carrier is given no window
    """
    if magma.is_finite:
        elements = magma.elements()
        if window is None:
            return Domain(elements, f"full carrier ({len(elements)} elements)", True)
        kept = tuple(e for e in elements if e in window)
        return Domain(kept, f"window {window}", len(kept) == len(elements))
    if window is None:
        raise ValueError(f"{magma.name} has an infinite carrier; a window is required")
    if isinstance(magma, RuleMagma):
        window = window.clamp(magma.carrier)
    kept = tuple(e for e in window if magma.contains(e))
    return Domain(kept, f"window {window}", False)


# Subcarriers ---------------------------------------------------------------

class Predicate(Enum):
    """Membership predicates of subcarriers."""
    ALL = "all"
    NONNEG = "nonneg"
    NONPOS = "nonpos"
    EVEN = "even"
    FINITE_SET = "finite-set"


@dataclass(frozen=True)
class Subcarrier:
    """Candidate subalgebra carrier.

    Attributes:
        predicate: Membership predicate
        members: Elements of a finite-set predicate (sorted, unique)
    """
    predicate: Predicate
    members: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.predicate is Predicate.FINITE_SET and not self.members:
            raise ValueError("finite-set subcarrier needs at least one element")
        if self.predicate is not Predicate.FINITE_SET and self.members:
            raise ValueError(f"{self.predicate.value} subcarrier takes no element list")
        object.__setattr__(self, 'members', tuple(sorted(set(self.members))))

    @classmethod
    def parse(cls, text: str) -> "Subcarrier":
        """Parse ``all``, ``nonneg``, ``nonpos``, ``even`` or ``{a,b,...}``.

        Raises:
            ValueError: On an unknown predicate or malformed element list
        """
        text = text.strip()
        if text.startswith('{') and text.endswith('}'):
            body = text[1:-1].strip()
            members = tuple(int(item) for item in body.split(',') if item.strip())
            return cls(Predicate.FINITE_SET, members)
        try:
            return cls(Predicate(text))
        except ValueError:
            names = ', '.join(p.value for p in Predicate if p is not Predicate.FINITE_SET)
            raise ValueError(f"unknown subcarrier predicate '{text}' (use {names} or {{a,b,...}})")

    def contains(self, value: int) -> bool:
        if self.predicate is Predicate.ALL:
            return True
        if self.predicate is Predicate.NONNEG:
            return value >= 0
        if self.predicate is Predicate.NONPOS:
            return value <= 0
        if self.predicate is Predicate.EVEN:
            return value % 2 == 0
        return value in self.members

    def __str__(self) -> str:
        if self.predicate is Predicate.FINITE_SET:
            return '{' + ','.join(str(m) for m in self.members) + '}'
        return self.predicate.value


@dataclass(frozen=True)
class RestrictedMagma(Magma):
    """A magma restricted to a (checked) subcarrier.

    Operations delegate to the base magma; operands outside the subcarrier
    are rejected. Finite-set subcarriers give a finite magma.
    """
    base: Magma
    subcarrier: Subcarrier

    @property
    def name(self) -> str:
        return f"{self.base.name}|{self.subcarrier}"

    @property
    def unit(self) -> int:
        return self.base.unit

    @property
    def is_finite(self) -> bool:
        return self.subcarrier.predicate is Predicate.FINITE_SET or self.base.is_finite

    def elements(self) -> Tuple[int, ...]:
        if self.subcarrier.predicate is Predicate.FINITE_SET:
            return tuple(m for m in self.subcarrier.members if self.base.contains(m))
        return tuple(e for e in self.base.elements() if self.subcarrier.contains(e))

    def contains(self, value: int) -> bool:
        return self.base.contains(value) and self.subcarrier.contains(value)

    @property
    def carrier_label(self) -> str:
        return f"{self.base.carrier_label}|{self.subcarrier}"

    def _check(self, operation: str, a: int, b: int) -> None:
        if not (self.contains(a) and self.contains(b)):
            raise EvaluationError(
                f"{operation}({a}, {b}): operand outside subcarrier {self.subcarrier}",
                operation, (a, b)
            )

    def mul(self, a: int, b: int) -> int:
        self._check('mul', a, b)
        return self.base.mul(a, b)

    def ldiv(self, a: int, b: int) -> int:
        self._check('ldiv', a, b)
        return self.base.ldiv(a, b)
