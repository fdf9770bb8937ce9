"""Centralized test data for the lpmkit test suite.

This module holds hand-transcribed operation values of the builtin rule
magmas, sample file texts and slow brute-force oracles that the faster
library code is cross-checked against.
"""

import itertools
import shutil
import tempfile
from pathlib import Path
from typing import Dict, List, Set, Tuple

# (operation, x, y, expected) transcribed from the case tables
CASE_TABLES: Dict[str, List[Tuple[str, int, int, int]]] = {
    'nwp-N': [
        ('ldiv', 0, 5, 5), ('ldiv', 2, 3, 4), ('ldiv', 1, 0, 1), ('ldiv', 7, 7, 8),
        ('mul', 2, 3, 2), ('mul', 0, 4, 4), ('mul', 5, 0, 5), ('mul', 3, 1, 0),
        ('mul', 1, 1, 0), ('mul', 4, 9, 8),
    ],
    'wp-Z': [
        ('mul', -1, -7, 3), ('ldiv', -1, 3, -7), ('ldiv', 5, 5, 6), ('ldiv', 3, -4, -4),
        ('ldiv', -2, -5, -10), ('ldiv', -4, -4, 0), ('mul', -3, -10, -5), ('mul', 2, -6, -6),
        ('mul', 4, 7, 6), ('mul', -5, 0, -5),
    ],
    'pnl-N': [
        ('ldiv', 3, 3, 0), ('ldiv', 1, 1, 0), ('ldiv', 1, 2, 3), ('ldiv', 0, 7, 7),
        ('ldiv', 4, 0, 1), ('mul', 1, 2, 1), ('mul', 5, 0, 5), ('mul', 0, 3, 3),
        ('mul', 6, 1, 0), ('mul', 2, 9, 8),
    ],
}

Z2_TEXT = """\
lpm-table v1
name z2
size 2
unit 0
mul
0 1
1 0
ldiv
0 1
1 0
"""

TRIV_TEXT = """\
lpm-table v1
name triv
size 1
unit 0
mul
0
ldiv
0
"""

# entry 2 on line 7, column 3
OUT_OF_RANGE_TEXT = """\
lpm-table v1
name broken
size 2
unit 0
mul
0 1
1 2
ldiv
0 1
1 0
"""

COMMENTED_TABLE_TEXT = """\
# the group Z/2
lpm-table v1
name z2   # trailing comment
size 2

unit 0
mul
0 1   # row 0
1 0
ldiv
0 1
1 0
"""

NWP_DIVISION_TEXT = """\
lpm-rules v1
name nwp-div
carrier N
ldiv
  x == 0 -> y
  x > 0 -> y + 1
"""

# D_1 sends 0 and 1 to the same value
NON_INJECTIVE_DIVISION_TEXT = """\
lpm-table v1
name repeated
size 3
unit 0
ldiv
0 1 2
2 2 0
1 0 2
"""

CATCH_ALL_RULES_TEXT = """\
lpm-rules v1
name shift
carrier Z
ldiv
  x == 0 -> y
  true -> y
mul
  true -> y
"""


class LpmTestDataLoader:
    """Temporary files for tests that go through the filesystem."""

    def __init__(self):
        self.temp_dirs: List[Path] = []

    def write(self, name: str, text: str) -> Path:
        """Write ``text`` to a fresh temporary directory and return the path."""
        directory = Path(tempfile.mkdtemp(prefix="lpmkit_"))
        self.temp_dirs.append(directory)
        path = directory / name
        path.write_text(text, encoding='utf-8')
        return path

    def cleanup(self) -> None:
        for directory in self.temp_dirs:
            shutil.rmtree(directory, ignore_errors=True)
        self.temp_dirs.clear()


# Oracles -------------------------------------------------------------------

TablePair = Tuple[Tuple[Tuple[int, ...], ...], Tuple[Tuple[int, ...], ...]]


def naive_lpm_tables(n: int) -> Set[TablePair]:
    """Every LPM of order ``n`` with unit 0, by filtering all completions.

    Row 0 and column 0 of ``*`` are fixed by identity (3); row 0 of ``\\``
    is fixed by identity (1) at ``x = 0``. Everything else is enumerated.
    """
    free_mul = [(x, y) for x in range(1, n) for y in range(1, n)]
    free_ldiv = [(x, y) for x in range(1, n) for y in range(n)]
    found = set()
    for mul_values in itertools.product(range(n), repeat=len(free_mul)):
        mul = [[y if x == 0 else (x if y == 0 else None) for y in range(n)] for x in range(n)]
        for (x, y), value in zip(free_mul, mul_values):
            mul[x][y] = value
        for ldiv_values in itertools.product(range(n), repeat=len(free_ldiv)):
            ldiv = [list(range(n))] + [[0] * n for _ in range(1, n)]
            for (x, y), value in zip(free_ldiv, ldiv_values):
                ldiv[x][y] = value
            if all(mul[x][ldiv[x][y]] == y for x in range(n) for y in range(n)):
                found.add((tuple(map(tuple, mul)), tuple(map(tuple, ldiv))))
    return found


def per_row_solution_count(n: int, x: int) -> int:
    """Brute-force count of (mul row, ldiv row) pairs of row ``x`` satisfying identity (1)."""
    count = 0
    for tail in itertools.product(range(n), repeat=n - 1):
        mul_row = (x,) + tail
        for ldiv_row in itertools.product(range(n), repeat=n):
            if all(mul_row[ldiv_row[y]] == y for y in range(n)):
                count += 1
    return count


def brute_force_iso_classes(tables: Set[TablePair], n: int) -> Set[TablePair]:
    """Minimal relabeled copy of each table pair, over permutations fixing 0."""
    classes = set()
    for mul, ldiv in tables:
        copies = []
        for images in itertools.permutations(range(1, n)):
            p = (0,) + images
            relabeled_mul = [[0] * n for _ in range(n)]
            relabeled_ldiv = [[0] * n for _ in range(n)]
            for a in range(n):
                for b in range(n):
                    relabeled_mul[p[a]][p[b]] = p[mul[a][b]]
                    relabeled_ldiv[p[a]][p[b]] = p[ldiv[a][b]]
            copies.append((tuple(map(tuple, relabeled_mul)), tuple(map(tuple, relabeled_ldiv))))
        classes.add(min(copies))
    return classes


def recursive_value(term, magma, z: int) -> int:
    """Independent evaluator over the term's printed form (kernel coherence)."""
    text = str(term)

    def parse(position: int) -> Tuple[int, int]:
        if text[position] == '(':
            left, position = parse(position + 1)
            operator = text[position + 1]
            right, position = parse(position + 3)
            value = magma.mul(left, right) if operator == '*' else magma.ldiv(left, right)
            return value, position + 1
        end = position
        while end < len(text) and text[end] not in ' )':
            end += 1
        token = text[position:end]
        if token == 'e':
            return magma.unit, end
        if token == 'z':
            return z, end
        return int(token), end

    return parse(0)[0]
