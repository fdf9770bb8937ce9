"""Census of finite LPMs of small order.

Structures are generated with unit 0. Identity (3) fixes row 0 and column 0
of ``*`` and, through identity (1) at ``x = e``, row 0 of ``\\``. Identity
(1) at a fixed ``x`` only involves row ``x`` of both tables, so each
non-unit row is searched on its own by backtracking and the census is the
product of the per-row solutions.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

from .errors import EnumerationLimitError
from .formats import print_table
from .magma import FiniteMagma

logger = logging.getLogger(__name__)

SOFT_LIMIT = 5

Row = Tuple[int, ...]


@dataclass(frozen=True)
class EnumConfig:
    """Census parameters.

    Attributes:
        order: Carrier size n
        up_to_iso: Emit one representative per isomorphism class
        count_only: Report the count instead of the structures
        left_loops_only: Keep only structures satisfying identity (2)
        allow_large: Permit orders above the soft limit
    """
    order: int
    up_to_iso: bool = False
    count_only: bool = False
    left_loops_only: bool = False
    allow_large: bool = False

    def __post_init__(self):
        """Validate the order against the soft limit."""
        if self.order < 1:
            raise ValueError("Order must be at least 1")
        if self.order > SOFT_LIMIT and not self.allow_large:
            raise EnumerationLimitError(
                f"order {self.order} exceeds the soft limit {SOFT_LIMIT}; "
                f"pass allow_large to override"
            )


def _row_solutions(n: int, x: int, left_loops_only: bool) -> List[Tuple[Row, Row]]:
    """All (mul row, ldiv row) pairs of a non-unit row ``x``.

    The mul row is filled first (its column 0 is forced to ``x``), then the
    ldiv row cell by cell; ``x*(x\\y) = y`` is checked as soon as ``x\\y``
    is set.
    """
    solutions = []
    ldiv_row = [0] * n

    def fill_ldiv(mul_row: Row, y: int) -> None:
        if y == n:
            if left_loops_only and any(ldiv_row[mul_row[v]] != v for v in range(n)):
                return
            solutions.append((mul_row, tuple(ldiv_row)))
            return
        for value in range(n):
            if mul_row[value] != y:
                continue
            ldiv_row[y] = value
            fill_ldiv(mul_row, y + 1)

    for tail in itertools.product(range(n), repeat=n - 1):
        fill_ldiv((x,) + tail, 0)
    logger.debug(f"order {n}, row {x}: {len(solutions)} solution(s)")
    return solutions


def _all_rows(config: EnumConfig) -> List[List[Tuple[Row, Row]]]:
    n = config.order
    return [_row_solutions(n, x, config.left_loops_only) for x in range(1, n)]


def _raw_lpms(config: EnumConfig) -> Iterator[FiniteMagma]:
    n = config.order
    identity = tuple(range(n))
    for index, rows in enumerate(itertools.product(*_all_rows(config)), start=1):
        mul = (identity,) + tuple(pair[0] for pair in rows)
        ldiv = (identity,) + tuple(pair[1] for pair in rows)
        yield FiniteMagma(f"lpm-{n}-{index}", n, 0, mul, ldiv)


def _relabel(magma: FiniteMagma, permutation: Tuple[int, ...]) -> Tuple[tuple, tuple]:
    """Tables of the isomorphic copy where element ``a`` becomes ``permutation[a]``."""
    n = magma.size
    inverse = [0] * n
    for a, image in enumerate(permutation):
        inverse[image] = a

    def table(source) -> tuple:
        return tuple(tuple(permutation[source[inverse[i]][inverse[j]]] for j in range(n))
                     for i in range(n))

    return table(magma.mul_table), table(magma.ldiv_table)


def canonical_form(magma: FiniteMagma) -> FiniteMagma:
    """Lexicographically minimal ``(mul, ldiv)`` over unit-fixing relabelings."""
    n, unit = magma.size, magma.unit_index
    others = [a for a in range(n) if a != unit]
    best = None
    for images in itertools.permutations(others):
        permutation = [0] * n
        permutation[unit] = unit
        for a, image in zip(others, images):
            permutation[a] = image
        candidate = _relabel(magma, tuple(permutation))
        if best is None or candidate < best:
            best = candidate
    return FiniteMagma(magma.name, n, unit, best[0], best[1])


def _is_canonical(magma: FiniteMagma) -> bool:
    canonical = canonical_form(magma)
    return (canonical.mul_table, canonical.ldiv_table) == (magma.mul_table, magma.ldiv_table)


def enumerate_lpms(config: EnumConfig) -> Iterator[FiniteMagma]:
    """Generate every LPM of ``config.order`` with unit 0.

    Structures come in lexicographic order of their ``(mul, ldiv)`` tables
    and are named ``lpm-N-K`` (K counts emitted structures from 1). With
    ``up_to_iso`` only canonical representatives are emitted.
    """
    n = config.order
    emitted = 0
    for magma in _raw_lpms(config):
        if config.up_to_iso and not _is_canonical(magma):
            continue
        emitted += 1
        yield FiniteMagma(f"lpm-{n}-{emitted}", n, 0, magma.mul_table, magma.ldiv_table)
    logger.info(f"order {n}: {emitted} structure(s)")


def count_lpms(n: int, up_to_iso: bool = False, left_loops_only: bool = False,
               allow_large: bool = False) -> int:
    """Number of LPMs of order ``n`` (with unit 0), optionally up to isomorphism."""
    config = EnumConfig(n, up_to_iso=up_to_iso, count_only=True,
                        left_loops_only=left_loops_only, allow_large=allow_large)
    if not up_to_iso:
        total = 1
        for solutions in _all_rows(config):
            total *= len(solutions)
        return total
    return sum(1 for _ in enumerate_lpms(config))


def format_census(magmas: Iterable[FiniteMagma]) -> str:
    """``lpm-table v1`` records separated by blank lines."""
    return '\n'.join(print_table(magma) for magma in magmas)
