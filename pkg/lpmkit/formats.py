"""Text formats for finite tables and rule magmas.

Three line-based formats, all allowing ``#`` comments and blank lines:

* ``lpm-table v1`` -- header (``name``, ``size``, ``unit``) then the ``mul``
  and ``ldiv`` sections, ``n`` rows of ``n`` entries each;
* ``lpm-rules v1`` -- header (``name``, ``carrier``) then ``ldiv`` and
  ``mul`` sections of ``guard -> result`` clauses;
* ``lpm-sample v1`` -- output only: a magma's tables on a window.

Parse errors carry the 1-based line and column of the offending token.
"""

import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import EvaluationError, ParseError
from .magma import (
    Affine, Carrier, Clause, Comparison, FiniteMagma, Magma, Parity, RuleMagma, Window
)

TABLE_MAGIC = 'lpm-table v1'
RULES_MAGIC = 'lpm-rules v1'
SAMPLE_MAGIC = 'lpm-sample v1'

TABLE_EXTENSION = '.lpmt'
RULES_EXTENSION = '.lpmr'


@dataclass(frozen=True)
class Line:
    """A meaningful source line with its comment stripped.

    Attributes:
        number: 1-based line number
        text: Line content without comment and trailing whitespace
        tokens: (column, token) pairs, 1-based columns
    """
    number: int
    text: str
    tokens: Tuple[Tuple[int, str], ...]

    @property
    def words(self) -> List[str]:
        return [token for _, token in self.tokens]

    def column(self, index: int) -> int:
        return self.tokens[index][0] if index < len(self.tokens) else len(self.text) + 1

    def rest(self, index: int) -> str:
        """Text from token ``index`` to the end of the line."""
        return self.text[self.column(index) - 1:].strip()


def _lines(text: str) -> Iterator[Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].rstrip()
        if not content.strip():
            continue
        tokens = tuple((m.start() + 1, m.group()) for m in re.finditer(r'\S+', content))
        yield Line(number, content, tokens)


def _magic(lines: List[Line], expected: str) -> None:
    if not lines:
        raise ParseError(f"empty input, expected '{expected}'", 1, 1)
    first = lines[0]
    if ' '.join(first.words) != expected:
        raise ParseError(f"wrong magic '{first.text.strip()}', expected '{expected}'",
                         first.number, first.column(0))


def _integer(line: Line, index: int, what: str) -> int:
    if index >= len(line.tokens):
        raise ParseError(f"missing {what}", line.number, line.column(index))
    token = line.tokens[index][1]
    if not re.fullmatch(r'-?\d+', token):
        raise ParseError(f"{what} must be an integer, got '{token}'", line.number, line.column(index))
    return int(token)


def _single_value_header(line: Line) -> str:
    if len(line.tokens) < 2:
        raise ParseError(f"header '{line.words[0]}' needs a value", line.number, line.column(1))
    return line.rest(1)


# Tables ----------------------------------------------------------------------

def parse_table(text: str, require_mul: bool = True) -> FiniteMagma:
    """Parse an ``lpm-table v1`` document.

    Args:
        text: Document text
        require_mul: Whether the ``mul`` section is mandatory (division-only
            structures for the construction pipeline omit it)

    Returns:
        The parsed FiniteMagma

    Raises:
        ParseError: With the line and column of the problem
    """
    lines = list(_lines(text))
    _magic(lines, TABLE_MAGIC)

    header: Dict[str, Tuple[Line, str]] = {}
    sections: Dict[str, List[List[int]]] = {}
    current: Optional[str] = None
    size: Optional[int] = None

    for line in lines[1:]:
        keyword = line.words[0]
        if keyword in ('name', 'size', 'unit'):
            if sections:
                raise ParseError(f"header '{keyword}' after the table sections",
                                 line.number, line.column(0))
            if keyword in header:
                raise ParseError(f"duplicate header '{keyword}'", line.number, line.column(0))
            header[keyword] = (line, _single_value_header(line))
            if keyword == 'size':
                size = _integer(line, 1, 'size')
                if size < 1:
                    raise ParseError("size must be positive", line.number, line.column(1))
                if len(line.tokens) > 2:
                    raise ParseError("unexpected token after size", line.number, line.column(2))
            elif keyword == 'unit':
                _integer(line, 1, 'unit')
            continue

        if keyword in ('mul', 'ldiv'):
            if len(line.tokens) > 1:
                raise ParseError(f"unexpected token after '{keyword}'", line.number, line.column(1))
            for required in ('name', 'size', 'unit'):
                if required not in header:
                    raise ParseError(f"missing header '{required}' before sections",
                                     line.number, line.column(0))
            if keyword in sections:
                raise ParseError(f"duplicate section '{keyword}'", line.number, line.column(0))
            if keyword == 'mul' and 'ldiv' in sections:
                raise ParseError("section 'mul' must precede 'ldiv'", line.number, line.column(0))
            if current is not None and len(sections[current]) != size:
                raise ParseError(f"section '{current}' has {len(sections[current])} rows, "
                                 f"expected {size}", line.number, line.column(0))
            sections[keyword] = []
            current = keyword
            continue

        if current is None:
            raise ParseError(f"unexpected '{keyword}' before any section",
                             line.number, line.column(0))
        rows = sections[current]
        if len(rows) == size:
            raise ParseError(f"section '{current}' has more than {size} rows",
                             line.number, line.column(0))
        row = []
        for index in range(len(line.tokens)):
            entry = _integer(line, index, 'table entry')
            if not 0 <= entry < size:
                raise ParseError(f"entry out of range: {entry} not in [0, {size - 1}]",
                                 line.number, line.column(index))
            row.append(entry)
        if len(row) != size:
            raise ParseError(f"row has {len(row)} entries, expected {size}",
                             line.number, line.column(min(len(row), len(line.tokens) - 1)))
        rows.append(row)

    last_line = lines[-1]
    if current is not None and len(sections[current]) != size:
        raise ParseError(f"section '{current}' has {len(sections[current])} rows, expected {size}",
                         last_line.number, 1)
    for required in ('name', 'size', 'unit'):
        if required not in header:
            raise ParseError(f"missing header '{required}'", last_line.number, 1)
    needed = ('mul', 'ldiv') if require_mul else ('ldiv',)
    for section in needed:
        if section not in sections:
            raise ParseError(f"missing section '{section}'", last_line.number, 1)

    unit_line, unit_text = header['unit']
    unit = int(unit_text)
    if not 0 <= unit < size:
        raise ParseError(f"unit {unit} out of range for size {size}", unit_line.number,
                         unit_line.column(1))
    return FiniteMagma.from_rows(header['name'][1], unit, sections.get('mul'), sections['ldiv'])


def print_table(magma: FiniteMagma) -> str:
    """Serialize a FiniteMagma in canonical ``lpm-table v1`` form."""
    lines = [TABLE_MAGIC, f"name {magma.name}", f"size {magma.size}", f"unit {magma.unit_index}"]
    for label, table in (('mul', magma.mul_table), ('ldiv', magma.ldiv_table)):
        if table is None:
            continue
        lines.append(label)
        lines.extend(' '.join(str(entry) for entry in row) for row in table)
    return '\n'.join(lines) + '\n'


# Rules -------------------------------------------------------------------------

TOKEN_PATTERN = re.compile(
    r'\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)'
    r'|(?P<op>->|&&|==|!=|>=|<=|[<>+\-*/()]))'
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str, line: int = 0, offset: int = 1) -> List[Token]:
    """Split a clause or term into tokens with 1-based columns.

    Raises:
        ParseError: On a character that starts no token
    """
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == '':
            break
        match = TOKEN_PATTERN.match(text, position)
        if not match or match.end() == position:
            column = offset + position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ParseError(f"unexpected character '{text[position:].lstrip()[:1]}'", line, column)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), offset + start))
        position = match.end()
    return tokens


class _TokenStream:
    """Cursor over a token list with positioned error helpers."""

    def __init__(self, tokens: List[Token], line: int, end_column: int):
        self.tokens = tokens
        self.index = 0
        self.line = line
        self.end_column = end_column

    def peek(self) -> Optional[Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self) -> Token:
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of clause")
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        token = self.peek()
        if token is not None and token.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token is None or token.text != text:
            raise self.error(f"expected '{text}'", token)
        self.index += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token if token is not None else self.peek()
        column = token.column if token is not None else self.end_column
        found = f", found '{token.text}'" if token is not None and 'found' not in message else ''
        return ParseError(message + found, self.line, column)


FLIPPED = {'==': '==', '!=': '!=', '>': '<', '<': '>', '>=': '<=', '<=': '>='}


def _parse_guard_atom(stream: _TokenStream):
    token = stream.next()
    if token.text in ('even', 'odd'):
        stream.expect('(')
        variable = stream.next()
        if variable.text not in ('x', 'y'):
            raise stream.error(f"{token.text}() takes x or y", variable)
        stream.expect(')')
        return Parity(variable.text, token.text == 'even')

    left = token
    if left.text not in ('x', 'y', '0'):
        raise stream.error("guard atoms compare x or y", left)
    op = stream.next()
    if op.text not in FLIPPED:
        raise stream.error("expected comparison operator", op)
    right = stream.next()
    if right.text not in ('x', 'y', '0'):
        raise stream.error("guard atoms compare with 0, x or y", right)
    if left.text == '0':
        if right.text == '0':
            raise stream.error("guard compares 0 with 0", right)
        left, right, op_text = right, left, FLIPPED[op.text]
    else:
        op_text = op.text
    try:
        return Comparison(left.text, op_text, right.text)
    except ValueError as e:
        raise ParseError(str(e), stream.line, left.column)


def _parse_guard(stream: _TokenStream) -> tuple:
    if stream.accept('true'):
        return ()
    atoms = [_parse_guard_atom(stream)]
    while stream.accept('&&'):
        atoms.append(_parse_guard_atom(stream))
    return tuple(atoms)


def _linear_atom(stream: _TokenStream) -> Tuple[int, int, int]:
    token = stream.next()
    if token.text == '-':
        a, b, c = _linear_atom(stream)
        return -a, -b, -c
    if token.text == '(':
        value = _linear_sum(stream)
        stream.expect(')')
        return value
    if token.kind == 'num':
        return 0, 0, int(token.text)
    if token.text == 'x':
        return 1, 0, 0
    if token.text == 'y':
        return 0, 1, 0
    raise stream.error("expected x, y, an integer or '('", token)


def _linear_product(stream: _TokenStream) -> Tuple[int, int, int]:
    value = _linear_atom(stream)
    while True:
        token = stream.peek()
        if token is None or token.text != '*':
            return value
        stream.next()
        factor = _linear_atom(stream)
        if value[:2] != (0, 0) and factor[:2] != (0, 0):
            raise stream.error("result is not affine (product of variables)", token)
        if value[:2] == (0, 0):
            k = value[2]
            value = (k * factor[0], k * factor[1], k * factor[2])
        else:
            k = factor[2]
            value = (k * value[0], k * value[1], k * value[2])


def _linear_sum(stream: _TokenStream) -> Tuple[int, int, int]:
    a, b, c = _linear_product(stream)
    while True:
        token = stream.peek()
        if token is None or token.text not in ('+', '-'):
            return a, b, c
        stream.next()
        da, db, dc = _linear_product(stream)
        sign = 1 if token.text == '+' else -1
        a, b, c = a + sign * da, b + sign * db, c + sign * dc


def _parse_result(stream: _TokenStream) -> Affine:
    a, b, c = _linear_sum(stream)
    halve = False
    if stream.accept('/'):
        divisor = stream.next()
        if divisor.text != '2':
            raise stream.error("only exact division by 2 is allowed", divisor)
        halve = True
    trailing = stream.peek()
    if trailing is not None:
        raise stream.error("unexpected token after result", trailing)
    return Affine(a, b, c, halve)


def parse_clause(text: str, line: int = 0, offset: int = 1) -> Clause:
    """Parse one ``guard -> result`` clause.

    Args:
        text: Clause text
        line: Line number for error positions
        offset: Column of the first character of ``text``

    Raises:
        ParseError: On malformed guards or results
    """
    tokens = tokenize(text, line, offset)
    stream = _TokenStream(tokens, line, offset + len(text))
    guard = _parse_guard(stream)
    arrow = stream.peek()
    if arrow is None or arrow.text != '->':
        raise stream.error("expected '&&' or '->' after guard atom", arrow)
    stream.next()
    if stream.peek() is None:
        raise stream.error("missing clause result")
    return Clause(guard, _parse_result(stream))


def parse_rules(text: str, require_mul: bool = True) -> RuleMagma:
    """Parse an ``lpm-rules v1`` document.

    Args:
        text: Document text
        require_mul: Whether the ``mul`` section is mandatory

    Returns:
        The parsed RuleMagma (unit 0)

    Raises:
        ParseError: With the line and column of the problem
    """
    lines = list(_lines(text))
    _magic(lines, RULES_MAGIC)

    header: Dict[str, str] = {}
    sections: Dict[str, List[Clause]] = {}
    current: Optional[str] = None

    for line in lines[1:]:
        keyword = line.words[0]
        if keyword in ('name', 'carrier') and current is None:
            if keyword in header:
                raise ParseError(f"duplicate header '{keyword}'", line.number, line.column(0))
            value = _single_value_header(line)
            if keyword == 'carrier' and value not in ('N', 'Z'):
                raise ParseError(f"carrier must be N or Z, got '{value}'",
                                 line.number, line.column(1))
            header[keyword] = value
            continue
        if keyword in ('mul', 'ldiv') and len(line.tokens) == 1:
            for required in ('name', 'carrier'):
                if required not in header:
                    raise ParseError(f"missing header '{required}' before sections",
                                     line.number, line.column(0))
            if keyword in sections:
                raise ParseError(f"duplicate section '{keyword}'", line.number, line.column(0))
            if current is not None and not sections[current]:
                raise ParseError(f"section '{current}' is empty", line.number, line.column(0))
            sections[keyword] = []
            current = keyword
            continue
        if current is None:
            raise ParseError(f"unexpected '{keyword}' before any section",
                             line.number, line.column(0))
        start = line.column(0)
        sections[current].append(parse_clause(line.text[start - 1:], line.number, start))

    last_line = lines[-1]
    for required in ('name', 'carrier'):
        if required not in header:
            raise ParseError(f"missing header '{required}'", last_line.number, 1)
    needed = ('ldiv', 'mul') if require_mul else ('ldiv',)
    for section in needed:
        if not sections.get(section):
            raise ParseError(f"missing or empty section '{section}'", last_line.number, 1)
    return RuleMagma(
        name=header['name'],
        carrier=Carrier(header['carrier']),
        mul_clauses=tuple(sections.get('mul', ())),
        ldiv_clauses=tuple(sections['ldiv']),
    )


def print_rules(magma: RuleMagma) -> str:
    """Serialize a RuleMagma in canonical ``lpm-rules v1`` form."""
    lines = [RULES_MAGIC, f"name {magma.name}", f"carrier {magma.carrier.value}"]
    for label, clauses in (('ldiv', magma.ldiv_clauses), ('mul', magma.mul_clauses)):
        if not clauses:
            continue
        lines.append(label)
        lines.extend(f"  {clause}" for clause in clauses)
    return '\n'.join(lines) + '\n'


# Dispatch ----------------------------------------------------------------------

def parse_magma(text: str, require_mul: bool = True) -> Magma:
    """Parse a table or rules document, dispatching on its magic line.

    Raises:
        ParseError: On an unknown magic line or any syntax error
    """
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input", 1, 1)
    magic = ' '.join(lines[0].words)
    if magic == TABLE_MAGIC:
        return parse_table(text, require_mul)
    if magic == RULES_MAGIC:
        return parse_rules(text, require_mul)
    raise ParseError(f"wrong magic '{lines[0].text.strip()}', expected '{TABLE_MAGIC}' "
                     f"or '{RULES_MAGIC}'", lines[0].number, lines[0].column(0))


def print_magma(magma: Magma) -> str:
    """Serialize a magma in its canonical text format.

    Raises:
        TypeError: For magmas with no text format (restricted or derived)
    """
    if isinstance(magma, FiniteMagma):
        return print_table(magma)
    if isinstance(magma, RuleMagma):
        return print_rules(magma)
    raise TypeError(f"{type(magma).__name__} has no canonical text format; use print_sample")


def print_sample(magma: Magma, window: Window) -> str:
    """Dump both operations on a window as ``lpm-sample v1``.

    Cells whose evaluation fails print as ``?``.
    """
    elements = [e for e in window if magma.contains(e)]
    lines = [SAMPLE_MAGIC, f"name {magma.name}", f"window {window.lo} {window.hi}",
             f"unit {magma.unit}"]
    for label in ('mul', 'ldiv'):
        lines.append(label)
        operation = getattr(magma, label)
        for x in elements:
            cells = []
            for y in elements:
                try:
                    cells.append(str(operation(x, y)))
                except EvaluationError:
                    cells.append('?')
            lines.append(f"{x}: {' '.join(cells)}")
    return '\n'.join(lines) + '\n'
