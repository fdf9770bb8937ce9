"""Search configuration for lpmkit.

All bounds that make an infinite-carrier question finite live in
:class:`SearchConfig`. Reports embed the resolved values so nothing in the
output depends on a silent default.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from .magma import Domain, Magma, Subcarrier, Window, resolve_domain

DEFAULT_DEPTH = 16
DEFAULT_RANGE = Window(-128, 128)
DEFAULT_VALUE_BOUND = 10 ** 6
DEFAULT_SUBALGEBRAS = ('all', 'nonneg', 'nonpos', 'even')


def derived_divisor_window(element_range: Window) -> Window:
    """Divisor window wide enough for witnesses of the form ``-2x-1``."""
    return Window(min(element_range.lo, 2 * element_range.lo - 1),
                  max(element_range.hi, 2 * element_range.hi + 1))


@dataclass(frozen=True)
class SearchConfig:
    """Bounds for witness searches and classification.

    Attributes:
        depth: Maximum witness chain length
        element_range: Elements whose witnesses are searched
        divisor_window: Divisors tried at each step (None derives it from the
            element range, see :func:`derived_divisor_window`)
        value_bound: States with a larger absolute value are pruned
        workers: Thread count for per-element searches
        subalgebras: Candidate subcarriers tried when refuting protomodularity
    """
    depth: int = DEFAULT_DEPTH
    element_range: Window = DEFAULT_RANGE
    divisor_window: Optional[Window] = None
    value_bound: int = DEFAULT_VALUE_BOUND
    workers: int = 1
    subalgebras: Tuple[Subcarrier, ...] = field(
        default_factory=lambda: tuple(Subcarrier.parse(p) for p in DEFAULT_SUBALGEBRAS))

    def __post_init__(self):
        """Validate configuration values."""
        if self.depth < 1:
            raise ValueError("Search depth must be at least 1")
        if self.value_bound < 1:
            raise ValueError("Value bound must be positive")
        if self.workers < 1:
            raise ValueError("Worker count must be at least 1")
        object.__setattr__(self, 'subalgebras', tuple(self.subalgebras))

    @property
    def divisors(self) -> Window:
        """The divisor window actually used."""
        return self.divisor_window or derived_divisor_window(self.element_range)

    def range_domain(self, magma: Magma) -> Domain:
        """Elements to classify: the whole carrier when finite."""
        return resolve_domain(magma, None if magma.is_finite else self.element_range)

    def divisor_domain(self, magma: Magma) -> Domain:
        """Divisors to try: the whole carrier when finite."""
        return resolve_domain(magma, None if magma.is_finite else self.divisors)

    def to_dict(self, magma: Optional[Magma] = None) -> Dict[str, Any]:
        """Convert to dictionary, resolved against ``magma`` when given."""
        if magma is not None and magma.is_finite:
            element_range = divisors = f"full carrier ({len(magma.elements())} elements)"
            depth = len(magma.elements())
        else:
            element_range = str(self.range_domain(magma).label if magma else self.element_range)
            divisors = str(self.divisor_domain(magma).label if magma else self.divisors)
            depth = self.depth
        return {
            'depth': depth,
            'range': element_range,
            'divisors': divisors,
            'value bound': self.value_bound,
            'subalgebras': [str(s) for s in self.subalgebras],
        }
