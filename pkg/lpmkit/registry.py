"""Builtin magmas and source resolution.

The three rule magmas on N and Z are the standard examples separating the
classes of the inclusion chain; ``z2`` and ``triv`` are the finite LPMs of
orders 2 and 1. Builtins are stored as text and parsed on first use, so they
go through the same parser as user files.
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import List, Tuple

from .errors import UnknownBuiltinError
from .formats import RULES_EXTENSION, TABLE_EXTENSION, parse_magma, parse_rules, parse_table
from .magma import Magma

logger = logging.getLogger(__name__)

BUILTIN_PREFIX = 'builtin:'

NWP_N = """\
lpm-rules v1
name nwp-N
carrier N
ldiv
  x == 0 -> y
  x > 0 -> y + 1
mul
  y == 0 -> x
  x == 0 -> y
  x > 0 && y > 0 -> y - 1
"""

WP_Z = """\
lpm-rules v1
name wp-Z
carrier Z
ldiv
  x == 0 -> y
  x > 0 && y >= 0 -> y + 1
  x > 0 && y < 0 -> y
  x < 0 && y >= 0 -> -2*y - 1
  x < 0 && y < 0 && x != y -> 2*y
  x < 0 && x == y -> 0
mul
  y == 0 -> x
  x == 0 -> y
  x > 0 && y > 0 -> y - 1
  x > 0 && y < 0 -> y
  x < 0 && odd(y) -> (-y - 1) / 2
  x < 0 && even(y) && y != 0 -> y / 2
"""

PNL_N = """\
lpm-rules v1
name pnl-N
carrier N
ldiv
  x == 0 -> y
  x == y -> 0
  x > 0 && x != y -> y + 1
mul
  y == 0 -> x
  x == 0 -> y
  x > 0 && y > 0 -> y - 1
"""

Z2 = """\
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

TRIV = """\
lpm-table v1
name triv
size 1
unit 0
mul
0
ldiv
0
"""

BUILTINS = {
    'nwp-N': (NWP_N, "LPM on N, not weakly protomodular (1\\1 = 2, chains only climb)"),
    'pnl-N': (PNL_N, "protomodular LPM on N that is not a left loop (x\\x = 0, 1\\(1*2) = 0)"),
    'triv': (TRIV, "one-element LPM, the terminal object"),
    'wp-Z': (WP_Z, "weakly protomodular LPM on Z with nwp-N as subalgebra on N"),
    'z2': (Z2, "the unique LPM of order 2, the group Z/2"),
}


@lru_cache(maxsize=None)
def builtin(name: str) -> Magma:
    """Return the builtin magma called ``name``.

    Raises:
        UnknownBuiltinError: If no builtin has that name
    """
    if name not in BUILTINS:
        raise UnknownBuiltinError(name, BUILTINS)
    return parse_magma(BUILTINS[name][0])


def builtin_names() -> List[str]:
    return sorted(BUILTINS)


def builtin_descriptions() -> List[Tuple[str, str]]:
    """Sorted ``(name, provenance)`` pairs of every builtin."""
    return [(name, BUILTINS[name][1]) for name in builtin_names()]


def load_magma(source: str, require_mul: bool = True) -> Magma:
    """Resolve a magma source: ``builtin:NAME`` or a file path.

    ``.lpmt`` files are read as tables, ``.lpmr`` files as rules; any other
    extension is dispatched on the magic line.

    Args:
        source: Source specification
        require_mul: Whether files must contain a ``mul`` section

    Raises:
        UnknownBuiltinError: For an unknown builtin name
        ParseError: For malformed files
        OSError: If the file cannot be read
    """
    if source.startswith(BUILTIN_PREFIX):
        return builtin(source[len(BUILTIN_PREFIX):])

    path = Path(source)
    logger.debug(f"loading magma from {path}")
    text = path.read_text(encoding='utf-8')
    if path.suffix == TABLE_EXTENSION:
        return parse_table(text, require_mul)
    if path.suffix == RULES_EXTENSION:
        return parse_rules(text, require_mul)
    return parse_magma(text, require_mul)
