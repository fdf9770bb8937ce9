"""Axiom and property checks for LPM-like structures.

Every check scans a finite :class:`~lpmkit.magma.Domain` in row-major
ascending order (x outer, y inner) and stops at the first violation, so
counterexamples are deterministic. Reports are stamped with their domain: a
pass on a window of an infinite carrier is evidence, not a proof.

Also here: the construction of a multiplication from a division structure,
subalgebra restriction and pointwise comparison of magmas.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from .data_structures import (
    CheckReport, CheckStatus, CompositeReport, Counterexample, PropReport
)
from .errors import ClosureError, EvaluationError, PreconditionError
from .magma import (
    Domain, FiniteMagma, Magma, Predicate, RestrictedMagma, Subcarrier, Window,
    resolve_domain
)

logger = logging.getLogger(__name__)

PairProbe = Callable[[int, int], Optional[Counterexample]]
ElementProbe = Callable[[int], Optional[Counterexample]]


def _error_counterexample(operands: Tuple[int, ...], expression: str,
                          error: EvaluationError) -> Counterexample:
    return Counterexample(operands=operands, expression=expression, note=str(error),
                          operation=error.operation)


def _scan_pairs(name: str, domain: Domain, expression: str, probe: PairProbe) -> CheckReport:
    """Run ``probe`` on every pair of the domain, stopping at the first violation."""
    for x in domain.elements:
        for y in domain.elements:
            try:
                found = probe(x, y)
            except EvaluationError as e:
                logger.info(f"{name}: evaluation error at ({x}, {y}): {e}")
                return CheckReport(name, CheckStatus.ERROR, domain,
                                   _error_counterexample((x, y), expression.format(x=x, y=y), e))
            if found is not None:
                return CheckReport(name, CheckStatus.FAIL, domain, found)
    return CheckReport(name, CheckStatus.PASS, domain)


def _scan_elements(name: str, domain: Domain, expression: str, probe: ElementProbe) -> CheckReport:
    """Run ``probe`` on every element of the domain."""
    for x in domain.elements:
        try:
            found = probe(x)
        except EvaluationError as e:
            return CheckReport(name, CheckStatus.ERROR, domain,
                               _error_counterexample((x,), expression.format(x=x), e))
        if found is not None:
            return CheckReport(name, CheckStatus.FAIL, domain, found)
    return CheckReport(name, CheckStatus.PASS, domain)


def check_identity1(magma: Magma, window: Optional[Window] = None) -> CheckReport:
    """Check identity (1): ``y = x * (x \\ y)``.

    Args:
        magma: Structure to check
        window: Scan window (required for infinite carriers)

    Returns:
        Report with the first counterexample pair in scan order
    """
    domain = resolve_domain(magma, window)

    def probe(x: int, y: int) -> Optional[Counterexample]:
        inner = magma.ldiv(x, y)
        value = magma.mul(x, inner)
        if value != y:
            return Counterexample((x, y), f"{x}*({x}\\{y}) = {x}*{inner}", value, y)
        return None

    return _scan_pairs('identity (1)', domain, "{x}*({x}\\{y})", probe)


def check_identity2(magma: Magma, window: Optional[Window] = None) -> CheckReport:
    """Check identity (2): ``y = x \\ (x * y)``."""
    domain = resolve_domain(magma, window)

    def probe(x: int, y: int) -> Optional[Counterexample]:
        inner = magma.mul(x, y)
        value = magma.ldiv(x, inner)
        if value != y:
            return Counterexample((x, y), f"{x}\\({x}*{y}) = {x}\\{inner}", value, y)
        return None

    return _scan_pairs('identity (2)', domain, "{x}\\({x}*{y})", probe)


def check_identity3(magma: Magma, window: Optional[Window] = None) -> CheckReport:
    """Check identity (3): ``x = e * x = x * e``."""
    domain = resolve_domain(magma, window)
    e = magma.unit

    def probe(x: int) -> Optional[Counterexample]:
        left = magma.mul(e, x)
        if left != x:
            return Counterexample((x,), f"e*{x}", left, x, note="left unit law")
        right = magma.mul(x, e)
        if right != x:
            return Counterexample((x,), f"{x}*e", right, x, note="right unit law")
        return None

    return _scan_elements('identity (3)', domain, "e*{x}, {x}*e", probe)


def check_xdivx(magma: Magma, window: Optional[Window] = None) -> CheckReport:
    """Check the identity ``x \\ x = e``."""
    domain = resolve_domain(magma, window)
    e = magma.unit

    def probe(x: int) -> Optional[Counterexample]:
        value = magma.ldiv(x, x)
        if value != e:
            return Counterexample((x,), f"{x}\\{x}", value, e)
        return None

    return _scan_elements('x\\x = e', domain, "{x}\\{x}", probe)


def is_lpm(magma: Magma, window: Optional[Window] = None) -> CompositeReport:
    """Check the LPM axioms: identities (1) and (3)."""
    return CompositeReport('lpm', (check_identity1(magma, window),
                                   check_identity3(magma, window)))


def is_left_loop(magma: Magma, window: Optional[Window] = None) -> CompositeReport:
    """Check the left-loop axioms: identities (1), (3) and (2)."""
    return CompositeReport('left loop', (check_identity1(magma, window),
                                         check_identity3(magma, window),
                                         check_identity2(magma, window)))


# Derived properties ----------------------------------------------------------

def _check_surjectivity(magma: Magma, domain: Domain) -> CheckReport:
    """Part (i): every left multiplication ``M_y`` is onto.

    On a partial domain a missing preimage may lie outside the window, so the
    result is INCONCLUSIVE evidence rather than a failure.
    """
    name = 'surjective M_y'
    targets = set(domain.elements)
    incomplete = 0
    first: Optional[Counterexample] = None
    for y in domain.elements:
        image = set()
        for x in domain.elements:
            try:
                image.add(magma.mul(y, x))
            except EvaluationError as e:
                return CheckReport(name, CheckStatus.ERROR, domain,
                                   _error_counterexample((y, x), f"{y}*{x}", e))
        missing = targets - image
        if missing:
            incomplete += 1
            if first is None:
                z = min(missing)
                first = Counterexample((y, z), f"{y}*? = {z}",
                                       note="no preimage in domain")
    if first is None:
        return CheckReport(name, CheckStatus.PASS, domain)
    if domain.exhaustive:
        return CheckReport(name, CheckStatus.FAIL, domain, first)
    return CheckReport(name, CheckStatus.INCONCLUSIVE, domain, first,
                       detail=f"{incomplete} of {len(domain.elements)} maps lack a "
                              f"preimage inside the window (evidence only)")


def _check_division(magma: Magma, domain: Domain) -> CheckReport:
    """Part (ii): every ``D_y`` injective on the domain and ``D_e`` the identity."""
    name = 'injective D_y, D_e = id'
    e = magma.unit
    for y in domain.elements:
        seen: Dict[int, int] = {}
        for x in domain.elements:
            try:
                value = magma.ldiv(y, x)
            except EvaluationError as err:
                return CheckReport(name, CheckStatus.ERROR, domain,
                                   _error_counterexample((y, x), f"{y}\\{x}", err))
            if value in seen:
                earlier = seen[value]
                return CheckReport(name, CheckStatus.FAIL, domain, Counterexample(
                    (y, earlier, x), f"{y}\\{earlier} = {y}\\{x}", value,
                    note=f"D_{y} not injective"))
            seen[value] = x
    for x in domain.elements:
        try:
            value = magma.ldiv(e, x)
        except EvaluationError as err:
            return CheckReport(name, CheckStatus.ERROR, domain,
                               _error_counterexample((e, x), f"e\\{x}", err))
        if value != x:
            return CheckReport(name, CheckStatus.FAIL, domain, Counterexample(
                (x,), f"e\\{x}", value, x, note="D_e is not the identity"))
    return CheckReport(name, CheckStatus.PASS, domain)


def _check_diagonal(magma: Magma, domain: Domain) -> CheckReport:
    """Part (iii): ``x \\ y = e`` implies ``x = y``."""
    e = magma.unit

    def probe(x: int, y: int) -> Optional[Counterexample]:
        if x != y:
            value = magma.ldiv(x, y)
            if value == e:
                return Counterexample((x, y), f"{x}\\{y}", value,
                                      note="unit off the diagonal")
        return None

    return _scan_pairs('x\\y = e implies x = y', domain, "{x}\\{y}", probe)


def check_props(magma: Magma, window: Optional[Window] = None) -> PropReport:
    """Check the three derived properties every LPM has.

    Args:
        magma: Structure to check
        window: Scan window (required for infinite carriers)

    Returns:
        PropReport with parts (i), (ii) and (iii)
    """
    domain = resolve_domain(magma, window)
    return PropReport(
        surjectivity=_check_surjectivity(magma, domain),
        division=_check_division(magma, domain),
        diagonal=_check_diagonal(magma, domain),
    )


# Multiplication from division -------------------------------------------------

@dataclass(frozen=True)
class DerivedMagma(Magma):
    """Magma whose multiplication is rebuilt from a division structure.

    ``y * x`` is the unique ``x'`` in the construction domain with
    ``y \\ x' = x`` when one exists, and ``y`` otherwise.

    Attributes:
        division: Structure supplying ``\\`` and the unit
        domain: Elements over which preimages are looked up
    """
    division: Magma
    domain: Domain
    _inverses: Dict[int, Dict[int, int]] = field(default_factory=dict, init=False,
                                                 repr=False, compare=False, hash=False)

    @property
    def name(self) -> str:
        return f"{self.division.name}*"

    @property
    def unit(self) -> int:
        return self.division.unit

    @property
    def is_finite(self) -> bool:
        return self.division.is_finite

    def elements(self) -> Tuple[int, ...]:
        return self.division.elements()

    def contains(self, value: int) -> bool:
        return self.division.contains(value)

    @property
    def carrier_label(self) -> str:
        return self.division.carrier_label

    def _inverse(self, y: int) -> Dict[int, int]:
        inverse = self._inverses.get(y)
        if inverse is None:
            inverse = {}
            for x in self.domain.elements:
                inverse.setdefault(self.division.ldiv(y, x), x)
            self._inverses[y] = inverse
        return inverse

    def mul(self, a: int, b: int) -> int:
        if not (self.contains(a) and self.contains(b)):
            raise EvaluationError(f"mul({a}, {b}): operand outside carrier", 'mul', (a, b))
        return self._inverse(a).get(b, a)

    def ldiv(self, a: int, b: int) -> int:
        return self.division.ldiv(a, b)


def construct_mul_from_div(division: Magma, window: Optional[Window] = None) -> Magma:
    """Define ``*`` from ``\\`` so that the result is an LPM.

    ``y * x = D_y^{-1}(x)`` when ``x`` is in the image of ``D_y`` and ``y``
    otherwise. Finite inputs yield a :class:`FiniteMagma` over the full
    carrier; rule inputs yield a :class:`DerivedMagma` whose images are
    taken over the window.

    Args:
        division: Structure supplying ``\\`` and the unit (its ``*`` is ignored)
        window: Construction domain for infinite carriers

    Returns:
        The constructed magma

    Raises:
        PreconditionError: If ``D_y`` is not injective, ``D_e`` is not the
            identity, or ``x \\ y = e`` for some ``x != y`` on the domain
    """
    domain = resolve_domain(division, None if division.is_finite else window)
    for report in (_check_division(division, domain), _check_diagonal(division, domain)):
        if not report.passed:
            logger.info(f"construction precondition failed: {report.name}: {report.counterexample}")
            raise PreconditionError(
                f"precondition '{report.name}' fails on {domain.label}: {report.counterexample}",
                report)

    if not isinstance(division, FiniteMagma):
        return DerivedMagma(division, domain)

    rows = []
    for y in domain.elements:
        inverse = {division.ldiv(y, x): x for x in domain.elements}
        rows.append([inverse.get(x, y) for x in domain.elements])
    ldiv_rows = [list(row) for row in division.ldiv_table]
    return FiniteMagma.from_rows(division.name, division.unit, rows, ldiv_rows)


# Subalgebras ---------------------------------------------------------------

def _subcarrier_domain(magma: Magma, subcarrier: Subcarrier, window: Optional[Window]) -> Domain:
    if subcarrier.predicate is Predicate.FINITE_SET:
        members = tuple(m for m in subcarrier.members if magma.contains(m))
        return Domain(members, f"finite set {subcarrier}", True)
    base = resolve_domain(magma, window)
    kept = tuple(e for e in base.elements if subcarrier.contains(e))
    return Domain(kept, f"{base.label} restricted to {subcarrier}", base.exhaustive)


def restrict(magma: Magma, subcarrier: Subcarrier, window: Optional[Window] = None,
             strict: bool = False) -> Tuple[Magma, CheckReport]:
    """Restrict a magma to a subcarrier after checking closure.

    Closure under the unit, ``*`` and ``\\`` is scanned on the domain
    elements that lie in the subcarrier.

    Args:
        magma: Structure to restrict
        subcarrier: Candidate subalgebra carrier
        window: Scan window (ignored for finite-set subcarriers)
        strict: Raise instead of returning a failed report

    Returns:
        Tuple of (restricted magma, closure report); the magma itself is
        returned for the ``all`` predicate

    Raises:
        ClosureError: If ``strict`` and the subcarrier is not closed
    """
    name = f"closure under {subcarrier}"
    if subcarrier.predicate is Predicate.ALL:
        domain = resolve_domain(magma, window)
        return magma, CheckReport(name, CheckStatus.PASS, domain, detail="whole carrier")

    domain = _subcarrier_domain(magma, subcarrier, window)
    report = None
    if not subcarrier.contains(magma.unit):
        report = CheckReport(name, CheckStatus.FAIL, domain,
                             Counterexample((), "e", magma.unit, note="unit not in subcarrier",
                                            operation='unit'))
    else:
        def probe(x: int, y: int) -> Optional[Counterexample]:
            for operation, symbol in (('mul', '*'), ('ldiv', '\\')):
                value = getattr(magma, operation)(x, y)
                if not subcarrier.contains(value):
                    return Counterexample((x, y), f"{operation}({x}, {y})", value,
                                          note=f"{x}{symbol}{y} leaves {subcarrier}",
                                          operation=operation)
            return None

        report = _scan_pairs(name, domain, "{x}, {y}", probe)

    if strict and not report.passed:
        cx = report.counterexample
        raise ClosureError(cx.operation, cx.operands, cx.value)
    return RestrictedMagma(magma, subcarrier), report


def equality_report(first: Magma, second: Magma, window: Optional[Window] = None) -> CheckReport:
    """Compare two magmas pointwise, reporting the first difference.

    Both ``*`` and ``\\`` are compared at every pair of the domain of
    ``first``, ``*`` before ``\\``.
    """
    domain = resolve_domain(first, window)

    def probe(x: int, y: int) -> Optional[Counterexample]:
        for operation in ('mul', 'ldiv'):
            left = getattr(first, operation)(x, y)
            right = getattr(second, operation)(x, y)
            if left != right:
                return Counterexample((x, y), f"{operation}({x}, {y})", left, right,
                                      note=f"{first.name} vs {second.name}")
        return None

    return _scan_pairs('pointwise equality', domain, "({x}, {y})", probe)


def magmas_equal_on(first: Magma, second: Magma, window: Optional[Window] = None) -> bool:
    """Whether two magmas agree on every pair of the domain."""
    return equality_report(first, second, window).passed
