"""Witness chains, protomodularity criteria and classification.

An element ``x`` has a witness chain ``(x_1, ..., x_n)`` when
``x_1\\(x_2\\(...(x_n\\x)...)) = e``; a magma all of whose elements have one
is weakly protomodular. ``x\\x = e`` everywhere gives one-step chains and
proves protomodularity outright, while a subalgebra that is not weakly
protomodular refutes it.

Searches over infinite carriers are bounded by a :class:`SearchConfig`, so a
missing chain is reported as inconclusive, never as nonexistence.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .checks import check_xdivx, is_left_loop, is_lpm, restrict
from .config import SearchConfig
from .data_structures import (
    ClassificationReport, ProtoStatus, ProtoVerdict, Refutation, RefutationGrade,
    SearchOutcome, WitnessChain, WpStatus, WpVerdict
)
from .errors import EvaluationError
from .magma import Domain, Magma, RuleMagma, Subcarrier, Window, resolve_domain

logger = logging.getLogger(__name__)

__all__ = [
    'check_xdivx', 'divisor_order', 'verify_witness', 'witness_search', 'find_witness',
    'reachable_levels', 'reachable_set', 'monotone_escape_holds', 'is_weakly_protomodular',
    'attempt_refutation', 'refute_protomodular_by_subalgebra', 'classify',
]


def divisor_order(magma: Magma, divisors: Optional[Window] = None) -> Tuple[Domain, Tuple[int, ...]]:
    """Resolve the divisor set and the order divisors are tried in.

    The unit always comes first. Finite carriers then go ascending;
    windows of infinite carriers go outward from the unit
    (``0, -1, 1, -2, 2, ...``), which is ascending on N.

    Returns:
        Tuple of (divisor domain, ordered divisors)
    """
    domain = resolve_domain(magma, None if magma.is_finite else divisors)
    unit = magma.unit
    if magma.is_finite:
        ordered = sorted(domain.elements, key=lambda v: (v != unit, v))
    else:
        ordered = sorted(domain.elements, key=lambda v: (abs(v - unit), v))
    return domain, tuple(ordered)


def verify_witness(magma: Magma, x: int, chain: Sequence[int]) -> bool:
    """Apply ``x_n\\`` first, then ``x_{n-1}\\``, ..., then ``x_1\\``.

    Returns:
        True iff the result is the unit
    """
    elements = getattr(chain, 'elements', chain)
    value = x
    for divisor in reversed(tuple(elements)):
        value = magma.ldiv(divisor, value)
    return value == magma.unit


def _bfs(magma: Magma, x: int, depth: int, divisors: Tuple[int, ...], value_bound: int,
         stop_at_unit: bool) -> Tuple[Optional[WitnessChain], List[List[int]], int]:
    """Breadth-first search over ``z -> y\\z``.

    Returns:
        Tuple of (chain or None, levels, pruned count); ``levels[0]`` is
        ``[x]`` and each later level holds the newly reached states in
        discovery order
    """
    unit = magma.unit
    parents: Dict[int, Tuple[int, int]] = {}
    visited: Set[int] = {x}
    levels = [[x]]
    pruned = 0

    def chain_to(divisor: int, previous: int) -> WitnessChain:
        steps = [divisor]
        while previous != x:
            previous, applied = parents[previous]
            steps.append(applied)
        return WitnessChain(tuple(steps))

    for level in range(1, depth + 1):
        frontier = []
        for state in levels[-1]:
            for divisor in divisors:
                value = magma.ldiv(divisor, state)
                if stop_at_unit and value == unit:
                    return chain_to(divisor, state), levels, pruned
                if value in visited:
                    continue
                if abs(value) > value_bound:
                    pruned += 1
                    continue
                visited.add(value)
                parents[value] = (state, divisor)
                frontier.append(value)
        logger.debug(f"level {level} from {x}: {len(frontier)} new state(s)")
        if not frontier:
            break
        levels.append(frontier)
    return None, levels, pruned


def witness_search(magma: Magma, x: int, depth: int, divisors: Optional[Window] = None,
                   value_bound: int = 10 ** 6) -> SearchOutcome:
    """Search for a shortest witness chain for ``x``.

    Ties are broken by the divisor order of :func:`divisor_order` at each
    level, so the chain is deterministic.

    Args:
        magma: Structure to search in
        x: Starting element
        depth: Maximum chain length
        divisors: Divisor window (ignored for finite carriers)
        value_bound: States with a larger absolute value are pruned

    Returns:
        SearchOutcome carrying the chain (or None) and search statistics

    Raises:
        ValueError: If depth is not positive
        EvaluationError: If an operation fails during the search
    """
    if depth < 1:
        raise ValueError("Search depth must be at least 1")
    domain, ordered = divisor_order(magma, divisors)
    chain, levels, pruned = _bfs(magma, x, depth, ordered, value_bound, stop_at_unit=True)
    if pruned:
        logger.info(f"witness search from {x} pruned {pruned} state(s) beyond |{value_bound}|")
    return SearchOutcome(
        element=x,
        chain=chain,
        depth=depth,
        divisors=domain.label,
        explored=sum(len(level) for level in levels),
        pruned=pruned,
    )


def find_witness(magma: Magma, x: int, depth: int, divisors: Optional[Window] = None,
                 value_bound: int = 10 ** 6) -> Optional[WitnessChain]:
    """Shortest witness chain for ``x``, or None within the bounds."""
    return witness_search(magma, x, depth, divisors, value_bound).chain


def reachable_levels(magma: Magma, x: int, depth: int, divisors: Optional[Window] = None,
                     value_bound: int = 10 ** 6) -> List[List[int]]:
    """States first reached after 0, 1, ..., ``depth`` divisions."""
    _, ordered = divisor_order(magma, divisors)
    _, levels, _ = _bfs(magma, x, depth, ordered, value_bound, stop_at_unit=False)
    return levels


def reachable_set(magma: Magma, x: int, depth: int, divisors: Optional[Window] = None,
                  value_bound: int = 10 ** 6) -> Set[int]:
    """Every state reachable from ``x`` in at most ``depth`` divisions, ``x`` included."""
    return {state for level in reachable_levels(magma, x, depth, divisors, value_bound)
            for state in level}


def monotone_escape_holds(magma: Magma, x: int, depth: int,
                          divisors: Optional[Window] = None) -> bool:
    """Whether the states reachable from ``x`` are exactly ``x, x+1, ..., x+depth``.

    On nwp-N this holds for every ``x > 0``: dividing by 0 fixes a state and
    dividing by anything else increments it, so the unit is never reached.
    """
    if x <= 0:
        return False
    return reachable_set(magma, x, depth, divisors) == set(range(x, x + depth + 1))


# Weak protomodularity -------------------------------------------------------

def is_weakly_protomodular(magma: Magma, config: Optional[SearchConfig] = None) -> WpVerdict:
    """Decide or bound weak protomodularity.

    Finite carriers are decided exactly: states are carrier elements, so a
    search of depth ``n`` over all divisors is complete. Infinite carriers
    get a witness for every element of the configured range, or an
    inconclusive verdict at the first element without one.

    Args:
        magma: Structure to examine
        config: Search bounds (defaults when omitted)

    Returns:
        WpVerdict
    """
    config = config or SearchConfig()
    if magma.is_finite:
        domain = resolve_domain(magma)
        depth = max(1, len(domain.elements))
        divisors = None
    else:
        domain = config.range_domain(magma)
        depth = config.depth
        divisors = config.divisors

    def search(x: int) -> SearchOutcome:
        return witness_search(magma, x, depth, divisors, config.value_bound)

    if config.workers > 1 and len(domain.elements) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            outcomes = list(executor.map(search, domain.elements))
    else:
        outcomes = []
        for x in domain.elements:
            outcome = search(x)
            outcomes.append(outcome)
            if not outcome.found and not magma.is_finite:
                break

    witnesses = {}
    failing = None
    for outcome in outcomes:
        if outcome.found:
            witnesses[outcome.element] = outcome.chain
        elif failing is None:
            failing = outcome
            if not magma.is_finite:
                break

    divisor_label = divisor_order(magma, divisors)[0].label
    if magma.is_finite:
        return WpVerdict(WpStatus.DECIDED, domain, depth, divisor_label, witnesses,
                         failing=failing, decided=failing is None)
    if failing is None:
        return WpVerdict(WpStatus.PROVED_ALL, domain, depth, divisor_label, witnesses)
    logger.info(f"no witness for {failing.element} within depth {depth}")
    return WpVerdict(WpStatus.INCONCLUSIVE, domain, depth, divisor_label, witnesses,
                     failing=failing)


# Protomodularity ------------------------------------------------------------

def _matches_nwp_n(magma: Magma) -> bool:
    from .registry import builtin

    if not isinstance(magma, RuleMagma):
        return False
    reference = builtin('nwp-N')
    return (magma.carrier, magma.mul_clauses, magma.ldiv_clauses) == \
        (reference.carrier, reference.mul_clauses, reference.ldiv_clauses)


def attempt_refutation(magma: Magma, subcarrier: Subcarrier,
                       config: Optional[SearchConfig] = None) -> Tuple[Optional[Refutation], str]:
    """Try to refute protomodularity through one candidate subalgebra.

    Subalgebras of a protomodular object are weakly protomodular, so a
    closed subcarrier whose restriction has an element without a witness
    refutes protomodularity. Only strong evidence counts: a finite exact
    decision, or a search that exhausted its depth without pruning.

    Args:
        magma: Structure to examine
        subcarrier: Candidate subalgebra carrier
        config: Search bounds

    Returns:
        Tuple of (refutation or None, reason); the reason says why no
        refutation was produced
    """
    config = config or SearchConfig()
    window = None if magma.is_finite else config.element_range
    restricted, closure = restrict(magma, subcarrier, window)
    if not closure.passed:
        return None, f"not closed: {closure.counterexample}"

    verdict = is_weakly_protomodular(restricted, config)
    if verdict.positive:
        return None, "weakly protomodular"
    failing = verdict.failing
    if verdict.status is WpStatus.DECIDED:
        grade = RefutationGrade.FINITE
    elif failing.pruned:
        return None, f"inconclusive at {failing.element} with {failing.pruned} pruned state(s)"
    elif (_matches_nwp_n(restricted)
          and monotone_escape_holds(restricted, failing.element, verdict.depth, config.divisors)):
        grade = RefutationGrade.MONOTONICITY
    else:
        grade = RefutationGrade.EVIDENCE
    logger.info(f"{magma.name} refuted through {subcarrier} at {failing.element} ({grade.value})")
    return Refutation(str(subcarrier), closure, verdict, grade), "refuted"


def refute_protomodular_by_subalgebra(magma: Magma, subcarrier: Subcarrier,
                                      config: Optional[SearchConfig] = None) -> Optional[Refutation]:
    """Refutation record for ``subcarrier``, or None when it yields no strong evidence."""
    return attempt_refutation(magma, subcarrier, config)[0]


def _classify_protomodular(magma: Magma, xdivx, config: SearchConfig) -> ProtoVerdict:
    if xdivx.passed:
        return ProtoVerdict(ProtoStatus.PROVED_BY_XDIVX, domain=xdivx.domain)
    tried = []
    for subcarrier in config.subalgebras:
        try:
            refutation, reason = attempt_refutation(magma, subcarrier, config)
        except EvaluationError as e:
            refutation, reason = None, f"evaluation error: {e}"
        tried.append((str(subcarrier), reason))
        if refutation is not None:
            return ProtoVerdict(ProtoStatus.REFUTED_BY_SUBALGEBRA, refutation=refutation,
                                tried=tuple(tried))
    return ProtoVerdict(ProtoStatus.UNKNOWN, tried=tuple(tried))


def classify(magma: Magma, config: Optional[SearchConfig] = None) -> ClassificationReport:
    """Place a magma on the inclusion chain.

    Runs the LPM and left-loop checks, the ``x\\x = e`` check, the
    weak-protomodularity search and the protomodularity criteria, all on
    the configured range (the whole carrier when finite).
    """
    config = config or SearchConfig()
    window = None if magma.is_finite else config.element_range
    logger.info(f"classifying {magma.name}")

    lpm = is_lpm(magma, window)
    left_loop = is_left_loop(magma, window)
    xdivx = check_xdivx(magma, window)
    weak = is_weakly_protomodular(magma, config)
    proto = _classify_protomodular(magma, xdivx, config)
    return ClassificationReport(
        magma=magma.name,
        carrier=magma.carrier_label,
        is_lpm=lpm,
        is_left_loop=left_loop,
        xdivx=xdivx,
        weakly_protomodular=weak,
        protomodular=proto,
        settings=config.to_dict(magma),
    )
