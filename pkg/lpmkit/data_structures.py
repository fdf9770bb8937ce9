"""Data structures for lpmkit check results and verdicts.

This module provides the report types returned by the checks, the witness
search and the classifier. Every structure converts to a plain dictionary
with a stable key order, which backs both the key-value text reports and
the JSON output of the CLI.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple
import json

from .magma import Domain


class CheckStatus(Enum):
    """Enumeration of possible check outcomes."""
    PASS = "PASS"
    FAIL = "FAIL"
    ERROR = "ERROR"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Counterexample:
    """A concrete violation found by a scan.

    Attributes:
        operands: The scanned element(s), e.g. ``(x, y)``
        expression: The evaluated expression with the operands substituted
        value: The value the expression produced (None on evaluation errors)
        expected: The value the property requires (None when not applicable)
        note: Optional free-form detail (evaluation error text, side of a law)
        operation: Operation that failed or left a subcarrier, when known
    """
    operands: Tuple[int, ...]
    expression: str
    value: Optional[int] = None
    expected: Optional[int] = None
    note: str = ""
    operation: str = field(default="", compare=False)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        result: Dict[str, Any] = {
            'at': list(self.operands),
            'expression': self.expression,
        }
        if self.value is not None:
            result['value'] = self.value
        if self.expected is not None:
            result['expected'] = self.expected
        if self.note:
            result['note'] = self.note
        return result

    def __str__(self) -> str:
        text = self.expression
        if self.value is not None:
            text += f" = {self.value}"
        if self.expected is not None:
            text += f", expected {self.expected}"
        if self.note:
            text += f" ({self.note})"
        return text


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one scanned property.

    Attributes:
        name: Property name (e.g. 'identity (1)')
        status: Check outcome
        domain: The domain that was scanned
        counterexample: First violation in scan order, if any
        detail: Extra information (evidence counts, notes)
    """
    name: str
    status: CheckStatus
    domain: Domain
    counterexample: Optional[Counterexample] = None
    detail: str = ""

    def __post_init__(self):
        """Validate report consistency."""
        if not self.name.strip():
            raise ValueError("Check name cannot be empty")
        if self.status in (CheckStatus.FAIL, CheckStatus.ERROR) and self.counterexample is None:
            raise ValueError(f"{self.status.value} report requires a counterexample")

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        result: Dict[str, Any] = {
            'status': self.status.value,
            'domain': self.domain.label,
            'exhaustive': self.domain.exhaustive,
        }
        if self.counterexample is not None:
            result['counterexample'] = self.counterexample.to_dict()
        if self.detail:
            result['detail'] = self.detail
        return result


@dataclass(frozen=True)
class CompositeReport:
    """Conjunction of several checks (is_lpm, is_left_loop).

    Attributes:
        name: Name of the combined property
        parts: The individual check reports
    """
    name: str
    parts: Tuple[CheckReport, ...]

    @property
    def holds(self) -> bool:
        return all(part.passed for part in self.parts)

    def first_failure(self) -> Optional[CheckReport]:
        return next((part for part in self.parts if not part.passed), None)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        result: Dict[str, Any] = {'holds': self.holds}
        for part in self.parts:
            result[part.name] = part.to_dict()
        return result


@dataclass(frozen=True)
class PropReport:
    """The three derived properties of an LPM.

    Attributes:
        surjectivity: Part (i), every left multiplication M_y is onto
        division: Part (ii), every D_y injective and D_e the identity
        diagonal: Part (iii), ``x \\ y = e`` only when ``x = y``
    """
    surjectivity: CheckReport
    division: CheckReport
    diagonal: CheckReport

    @property
    def parts(self) -> Tuple[CheckReport, ...]:
        return (self.surjectivity, self.division, self.diagonal)

    @property
    def holds(self) -> bool:
        """True unless some part failed; window evidence does not count against it."""
        return all(p.status in (CheckStatus.PASS, CheckStatus.INCONCLUSIVE) for p in self.parts)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            '(i) surjective M_y': self.surjectivity.to_dict(),
            '(ii) injective D_y, D_e = id': self.division.to_dict(),
            '(iii) x\\y = e implies x = y': self.diagonal.to_dict(),
        }


@dataclass(frozen=True)
class WitnessChain:
    """Elements ``(x_1, ..., x_n)`` with ``x_1\\(x_2\\(...(x_n\\x)...)) = e``.

    ``x_1`` is the outermost divisor, so ``x_n`` is applied first.
    """
    elements: Tuple[int, ...]

    def __post_init__(self):
        """Validate the chain."""
        if not self.elements:
            raise ValueError("Witness chain cannot be empty")
        object.__setattr__(self, 'elements', tuple(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def render(self, unit: Optional[int] = None) -> str:
        """Space-separated chain; the unit prints as ``e`` when given."""
        return ' '.join('e' if e == unit else str(e) for e in self.elements)

    def to_dict(self) -> List[int]:
        return list(self.elements)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class SearchOutcome:
    """Result of one bounded witness search.

    Attributes:
        element: The element searched from
        chain: The minimal chain found, or None
        depth: Depth bound used
        divisors: Label of the divisor set
        explored: Number of distinct states visited
        pruned: Number of states discarded by the value bound
    """
    element: int
    chain: Optional[WitnessChain]
    depth: int
    divisors: str
    explored: int = 0
    pruned: int = 0

    @property
    def found(self) -> bool:
        return self.chain is not None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        result: Dict[str, Any] = {
            'element': self.element,
            'chain': self.chain.to_dict() if self.chain else None,
            'depth': self.depth,
            'divisors': self.divisors,
            'explored_states': self.explored,
        }
        if self.pruned:
            result['pruned_states'] = self.pruned
        return result


class WpStatus(Enum):
    """Kinds of weak-protomodularity verdicts."""
    PROVED_ALL = "proved-all"
    INCONCLUSIVE = "inconclusive"
    DECIDED = "decided"


@dataclass(frozen=True)
class WpVerdict:
    """Weak-protomodularity verdict.

    ``PROVED_ALL`` carries a verified witness for every element of the
    range; ``INCONCLUSIVE`` names the first element without a witness within
    bounds and never claims nonexistence; ``DECIDED`` is the exact answer for
    a finite carrier.

    Attributes:
        status: Verdict kind
        domain: Element range the verdict covers
        depth: Depth bound of the searches
        divisors: Label of the divisor set
        witnesses: Chain found for each element (ascending element order)
        failing: Search outcome of the first element without a chain
        decided: Exact answer (DECIDED only)
    """
    status: WpStatus
    domain: Domain
    depth: int
    divisors: str
    witnesses: Dict[int, WitnessChain] = field(default_factory=dict)
    failing: Optional[SearchOutcome] = None
    decided: Optional[bool] = None

    def __post_init__(self):
        """Validate verdict consistency."""
        if self.status is WpStatus.INCONCLUSIVE and self.failing is None:
            raise ValueError("Inconclusive verdict requires the failing search")
        if self.status is WpStatus.DECIDED and self.decided is None:
            raise ValueError("Decided verdict requires a value")

    @property
    def positive(self) -> bool:
        if self.status is WpStatus.DECIDED:
            return bool(self.decided)
        return self.status is WpStatus.PROVED_ALL

    @property
    def longest_chain(self) -> int:
        return max((len(c) for c in self.witnesses.values()), default=0)

    def summary(self) -> str:
        if self.status is WpStatus.PROVED_ALL:
            return f"proved on range {self.domain.label}"
        if self.status is WpStatus.DECIDED:
            return "yes (exact)" if self.decided else f"no (exact, stuck at {self.failing.element})"
        return f"inconclusive at {self.failing.element} (depth {self.depth}, divisors {self.divisors})"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        result: Dict[str, Any] = {
            'verdict': self.status.value,
            'summary': self.summary(),
            'range': self.domain.label,
            'depth': self.depth,
            'divisors': self.divisors,
            'longest_chain': self.longest_chain,
        }
        if self.decided is not None:
            result['decided'] = self.decided
        if self.failing is not None:
            result['failing'] = self.failing.to_dict()
        return result


class ProtoStatus(Enum):
    """Kinds of protomodularity verdicts."""
    PROVED_BY_XDIVX = "proved (x\\x=e)"
    REFUTED_BY_SUBALGEBRA = "refuted-by-subalgebra"
    UNKNOWN = "unknown"


class RefutationGrade(Enum):
    """Strength of a subalgebra refutation."""
    EVIDENCE = "evidence"
    MONOTONICITY = "certified (monotonicity)"
    FINITE = "certified (finite subalgebra)"


@dataclass(frozen=True)
class Refutation:
    """Record of a protomodularity refutation through a subalgebra.

    Attributes:
        subcarrier: Label of the subalgebra's carrier
        closure: Closure report of the subcarrier
        verdict: Weak-protomodularity verdict of the subalgebra
        grade: Strength of the refutation
    """
    subcarrier: str
    closure: CheckReport
    verdict: WpVerdict
    grade: RefutationGrade

    @property
    def element(self) -> int:
        return self.verdict.failing.element

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'subalgebra': self.subcarrier,
            'stuck_element': self.element,
            'grade': self.grade.value,
            'closure': self.closure.to_dict(),
            'subalgebra_wp': self.verdict.to_dict(),
        }


@dataclass(frozen=True)
class ProtoVerdict:
    """Protomodularity verdict.

    Attributes:
        status: Verdict kind
        domain: Domain of the ``x\\x = e`` check (PROVED_BY_XDIVX)
        refutation: Refutation record (REFUTED_BY_SUBALGEBRA)
        tried: Subcarriers examined, with the reason each was set aside
    """
    status: ProtoStatus
    domain: Optional[Domain] = None
    refutation: Optional[Refutation] = None
    tried: Tuple[Tuple[str, str], ...] = ()

    def summary(self) -> str:
        if self.status is ProtoStatus.REFUTED_BY_SUBALGEBRA:
            return f"{self.status.value} ({self.refutation.grade.value})"
        return self.status.value

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        result: Dict[str, Any] = {'verdict': self.summary()}
        if self.domain is not None:
            result['domain'] = self.domain.label
        if self.refutation is not None:
            result['refutation'] = self.refutation.to_dict()
        if self.tried:
            result['subalgebras_tried'] = {name: reason for name, reason in self.tried}
        return result


@dataclass(frozen=True)
class ClassificationReport:
    """Structured verdicts along the inclusion chain.

    Attributes:
        magma: Name of the classified magma
        carrier: Carrier label
        is_lpm: Identities (1) and (3)
        is_left_loop: Identities (1), (3) and (2)
        xdivx: The ``x \\ x = e`` check
        weakly_protomodular: Witness-chain verdict
        protomodular: Protomodularity verdict
        settings: The search bounds actually used
    """
    magma: str
    carrier: str
    is_lpm: CompositeReport
    is_left_loop: CompositeReport
    xdivx: CheckReport
    weakly_protomodular: WpVerdict
    protomodular: ProtoVerdict
    settings: Dict[str, Any] = field(default_factory=dict)

    def hierarchy_consistent(self) -> bool:
        """Check left loop => x\\x = e => weakly protomodular."""
        if self.is_left_loop.holds and not self.xdivx.passed:
            return False
        if self.xdivx.passed and not self.weakly_protomodular.positive:
            return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'magma': self.magma,
            'carrier': self.carrier,
            'settings': self.settings,
            'lpm': self.is_lpm.holds,
            'left loop': self.is_left_loop.holds,
            'x\\x = e': self.xdivx.status.value,
            'weakly protomodular': self.weakly_protomodular.summary(),
            'protomodular': self.protomodular.summary(),
            'details': {
                'lpm': self.is_lpm.to_dict(),
                'left loop': self.is_left_loop.to_dict(),
                'x\\x = e': self.xdivx.to_dict(),
                'weakly protomodular': self.weakly_protomodular.to_dict(),
                'protomodular': self.protomodular.to_dict(),
            },
        }


class ReportEncoder(json.JSONEncoder):
    """Custom JSON encoder for report objects."""

    def default(self, obj):
        """Convert custom objects to JSON-serializable format."""
        if hasattr(obj, 'to_dict'):
            return obj.to_dict()
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, (set, frozenset, tuple)):
            return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
        return super().default(obj)


def serialize_report(data: Dict[str, Any]) -> str:
    """Serialize a report dictionary to a JSON string."""
    return json.dumps(data, cls=ReportEncoder, indent=2)


def _format_scalar(value: Any) -> str:
    if value is True:
        return "yes"
    if value is False:
        return "no"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return ' '.join(_format_scalar(v) for v in value) if value else "(empty)"
    return str(value)


def format_report_text(data: Dict[str, Any], indent: int = 0) -> str:
    """Format a report dictionary as key-value text.

    Keys keep their insertion order; nested dictionaries become indented
    sections.

    Args:
        data: Report dictionary (from ``to_dict``)
        indent: Indentation of the top-level keys

    Returns:
        Text with one ``key: value`` per line
    """
    lines = []
    pad = ' ' * indent
    for key, value in data.items():
        if isinstance(value, dict):
            if value:
                lines.append(f"{pad}{key}:")
                lines.append(format_report_text(value, indent + 2))
            else:
                lines.append(f"{pad}{key}: (empty)")
        else:
            lines.append(f"{pad}{key}: {_format_scalar(value)}")
    return '\n'.join(lines)
