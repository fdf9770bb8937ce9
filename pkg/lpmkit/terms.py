"""Terms over a magma with free generators.

A term is a tree whose leaves are the unit ``e``, constants of a fixed magma
and named generators, with binary nodes for ``*`` and ``\\``. Terms are
evaluated under an assignment of the generators and normalized by the
cancellations valid in every LPM:

* ``e * t -> t`` and ``t * e -> t``;
* ``e \\ t -> t``;
* constant folding, with constants equal to the unit becoming ``e``;
* ``s * (s \\ t) -> t`` for structurally identical ``s``.

Rewriting is innermost-leftmost and every step strictly shrinks the term or
canonicalizes a unit constant, so it terminates within ``size(t)`` steps.
"""

import logging
import re
from dataclasses import dataclass
from typing import FrozenSet, List, Mapping, Optional, Sequence, Union

from .errors import EvaluationError, ParseError
from .magma import Magma

logger = logging.getLogger(__name__)

KERNEL_GENERATOR = 'z'

# Parenthesis depth accepted by the parser; deeper input is a ParseError.
MAX_TERM_DEPTH = 256


@dataclass(frozen=True)
class UnitLeaf:
    """The unit ``e``."""

    @property
    def size(self) -> int:
        return 1

    def generators(self) -> FrozenSet[str]:
        return frozenset()

    def __str__(self) -> str:
        return 'e'


@dataclass(frozen=True)
class Const:
    """A constant element of the magma."""
    value: int

    @property
    def size(self) -> int:
        return 1

    def generators(self) -> FrozenSet[str]:
        return frozenset()

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Gen:
    """A free generator."""
    name: str

    def __post_init__(self):
        if not re.fullmatch(r'[A-Za-z_][A-Za-z_0-9]*', self.name) or self.name == 'e':
            raise ValueError(f"Invalid generator name {self.name!r}")

    @property
    def size(self) -> int:
        return 1

    def generators(self) -> FrozenSet[str]:
        return frozenset({self.name})

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class MulNode:
    left: "Term"
    right: "Term"

    @property
    def size(self) -> int:
        return 1 + self.left.size + self.right.size

    def generators(self) -> FrozenSet[str]:
        return self.left.generators() | self.right.generators()

    def __str__(self) -> str:
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class LdivNode:
    left: "Term"
    right: "Term"

    @property
    def size(self) -> int:
        return 1 + self.left.size + self.right.size

    def generators(self) -> FrozenSet[str]:
        return self.left.generators() | self.right.generators()

    def __str__(self) -> str:
        return f"({self.left} \\ {self.right})"


Term = Union[UnitLeaf, Const, Gen, MulNode, LdivNode]
Assignment = Mapping[str, int]


# Parsing -------------------------------------------------------------------

TERM_TOKEN = re.compile(r'\s*(?:(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[()*\\]))')


def _term_tokens(text: str) -> List[tuple]:
    tokens = []
    position = 0
    while position < len(text):
        if not text[position:].strip():
            break
        match = TERM_TOKEN.match(text, position)
        if not match:
            column = position + len(text[position:]) - len(text[position:].lstrip()) + 1
            raise ParseError(f"unexpected character '{text[position:].lstrip()[0]}'", 1, column)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind) + 1))
        position = match.end()
    return tokens


class _TermParser:
    """Recursive-descent parser for fully parenthesized terms."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _term_tokens(text)
        self.index = 0
        self.depth = 0

    def _peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _error(self, message: str, token=None) -> ParseError:
        column = token[2] if token else len(self.text) + 1
        return ParseError(message, 1, column)

    def _next(self):
        token = self._peek()
        if token is None:
            raise self._error("unexpected end of term")
        self.index += 1
        return token

    def parse(self) -> Term:
        term = self._expr()
        trailing = self._peek()
        if trailing is not None:
            raise self._error(f"unexpected '{trailing[1]}' after term", trailing)
        return term

    def _expr(self) -> Term:
        kind, text, column = token = self._next()
        if kind == 'int':
            return Const(int(text))
        if kind == 'ident':
            return UnitLeaf() if text == 'e' else Gen(text)
        if text != '(':
            raise self._error(f"expected 'e', an integer, a generator or '(', found '{text}'", token)
        if self.depth >= MAX_TERM_DEPTH:
            raise self._error(f"term nested too deeply (more than {MAX_TERM_DEPTH} levels)", token)
        self.depth += 1
        try:
            return self._compound()
        finally:
            self.depth -= 1

    def _compound(self) -> Term:
        left = self._expr()
        operator_token = self._next()
        if operator_token[1] == ')':
            return left
        if operator_token[1] not in ('*', '\\'):
            raise self._error(f"expected '*', '\\' or ')', found '{operator_token[1]}'", operator_token)
        right = self._expr()
        closing = self._next()
        if closing[1] != ')':
            raise self._error(f"expected ')', found '{closing[1]}'", closing)
        return MulNode(left, right) if operator_token[1] == '*' else LdivNode(left, right)


def parse_term(text: str) -> Term:
    """Parse a term.

    Grammar: ``expr := 'e' | INT | IDENT | '(' expr ('*'|'\\') expr ')'``;
    integers may be negative and ``'(' expr ')'`` is plain grouping.
    Nesting deeper than ``MAX_TERM_DEPTH`` is rejected.

    Raises:
        ParseError: With the 1-based column of the problem (line 1)
    """
    return _TermParser(text).parse()


# Evaluation ----------------------------------------------------------------

def evaluate(term: Term, magma: Magma, assignment: Optional[Assignment] = None) -> int:
    """Evaluate a term in ``magma`` under ``assignment``.

    Raises:
        EvaluationError: For unbound generators, constants outside the
            carrier, or errors of the magma's operations
    """
    try:
        return _evaluate(term, magma, assignment or {})
    except RecursionError:
        raise EvaluationError("term nested too deeply to evaluate", 'term') from None


def _evaluate(term: Term, magma: Magma, assignment: Assignment) -> int:
    if isinstance(term, UnitLeaf):
        return magma.unit
    if isinstance(term, Const):
        if not magma.contains(term.value):
            raise EvaluationError(f"constant {term.value} is not an element of {magma.name}",
                                  'term', (term.value,))
        return term.value
    if isinstance(term, Gen):
        if term.name not in assignment:
            raise EvaluationError(f"unbound generator '{term.name}'", 'term')
        value = assignment[term.name]
        if not magma.contains(value):
            raise EvaluationError(f"generator '{term.name}' assigned {value}, "
                                  f"not an element of {magma.name}", 'term', (value,))
        return value
    left = _evaluate(term.left, magma, assignment)
    right = _evaluate(term.right, magma, assignment)
    if isinstance(term, MulNode):
        return magma.mul(left, right)
    return magma.ldiv(left, right)


# Normalization -------------------------------------------------------------

class Normalizer:
    """Innermost-leftmost rewriting of terms over one magma.

    Attributes:
        magma: Magma supplying constants and folding
        steps: Rewrite steps taken by the last :meth:`normalize` call
    """

    def __init__(self, magma: Magma):
        self.magma = magma
        self.steps = 0

    def normalize(self, term: Term) -> Term:
        self.steps = 0
        try:
            result = self._rewrite(term)
            logger.debug(f"normalized a term of size {term.size} in {self.steps} step(s)")
        except RecursionError:
            raise EvaluationError("term nested too deeply to normalize", 'term') from None
        return result

    def _leaf(self, value: int) -> Term:
        return UnitLeaf() if value == self.magma.unit else Const(value)

    def _rewrite(self, term: Term) -> Term:
        if isinstance(term, Const):
            if term.value == self.magma.unit:
                self.steps += 1
                return UnitLeaf()
            return term
        if isinstance(term, (UnitLeaf, Gen)):
            return term

        left = self._rewrite(term.left)
        right = self._rewrite(term.right)

        if isinstance(term, MulNode):
            if isinstance(left, UnitLeaf):
                self.steps += 1
                return right
            if isinstance(right, UnitLeaf):
                self.steps += 1
                return left
            if isinstance(left, Const) and isinstance(right, Const):
                self.steps += 1
                return self._leaf(self.magma.mul(left.value, right.value))
            if isinstance(right, LdivNode) and right.left == left:
                self.steps += 1
                return right.right
            return MulNode(left, right)

        if isinstance(left, UnitLeaf):
            self.steps += 1
            return right
        if isinstance(left, Const) and isinstance(right, Const):
            self.steps += 1
            return self._leaf(self.magma.ldiv(left.value, right.value))
        return LdivNode(left, right)


def normalize(term: Term, magma: Magma) -> Term:
    """Normalize ``term`` over ``magma``.

    Raises:
        EvaluationError: If constant folding fails
    """
    return Normalizer(magma).normalize(term)


# Kernel --------------------------------------------------------------------

def kernel_member(magma: Magma, x: int, term: Term) -> bool:
    """Whether ``term`` at ``z = x`` evaluates to the unit.

    Raises:
        EvaluationError: If the term uses generators other than ``z``
    """
    try:
        extra = term.generators() - {KERNEL_GENERATOR}
    except RecursionError:
        raise EvaluationError("term nested too deeply to evaluate", 'term') from None
    if extra:
        raise EvaluationError(f"kernel terms may only use '{KERNEL_GENERATOR}', "
                              f"found {', '.join(sorted(extra))}", 'term')
    return evaluate(term, magma, {KERNEL_GENERATOR: x}) == magma.unit


def chain_term(chain: Sequence[int], unit: Optional[int] = None) -> Term:
    """The term ``x_1 \\ (x_2 \\ (... (x_n \\ z)))`` of a witness chain."""
    elements = list(getattr(chain, 'elements', chain))
    if not elements:
        raise ValueError("Witness chain cannot be empty")
    term: Term = Gen(KERNEL_GENERATOR)
    for element in reversed(elements):
        leaf = UnitLeaf() if element == unit else Const(element)
        term = LdivNode(leaf, term)
    return term
