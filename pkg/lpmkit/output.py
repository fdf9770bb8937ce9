"""Output formatting for lpmkit reports.

Reports are rendered by a strategy (key-value text or JSON) and printed to
standard output; verdict words are coloured when colour is enabled and
standard output is a terminal. Diagnostics go to standard error.
"""

import sys
from abc import ABC, abstractmethod
from typing import Any, Dict

from .data_structures import format_report_text, serialize_report

try:
    import colorama
    from colorama import Fore, Style
    colorama.init()
    COLORS_AVAILABLE = True
except ImportError:
    COLORS_AVAILABLE = False

    class _DummyColor:
        def __getattr__(self, name):
            return ""

    Fore = Style = _DummyColor()


POSITIVE_WORDS = ('PASS', 'yes', 'proved')
NEGATIVE_WORDS = ('FAIL', 'no', 'refuted')
UNCERTAIN_WORDS = ('ERROR', 'INCONCLUSIVE', 'inconclusive', 'unknown', 'none within bounds')


class ReportStrategy(ABC):
    """Abstract base class for report rendering strategies."""

    @abstractmethod
    def format_report(self, data: Dict[str, Any]) -> str:
        """Render a report dictionary.

        Args:
            data: Report dictionary (from ``to_dict``)

        Returns:
            Rendered report without a trailing newline
        """
        pass


class TextReportStrategy(ReportStrategy):
    """Stable key-value text, nested sections indented two spaces."""

    def format_report(self, data: Dict[str, Any]) -> str:
        return format_report_text(data)


class JSONReportStrategy(ReportStrategy):
    """Indented JSON in the key order of ``to_dict``."""

    def format_report(self, data: Dict[str, Any]) -> str:
        return serialize_report(data)


class OutputFormatter:
    """Prints lpmkit reports and diagnostics."""

    def __init__(self,
                 format_type: str = "text",
                 use_color: bool = True,
                 verbosity: int = 0,
                 quiet: bool = False):
        """Initialize the output formatter.

        Args:
            format_type: Output format ('text' or 'json')
            use_color: Whether to colour verdicts (only on a terminal)
            verbosity: Verbosity level (0-2)
            quiet: Whether to suppress informational messages
        """
        if format_type not in ('text', 'json'):
            raise ValueError(f"Unknown output format: {format_type}")
        self.format_type = format_type
        self.verbosity = verbosity
        self.quiet = quiet
        self.use_color = (use_color and COLORS_AVAILABLE and format_type == 'text'
                          and hasattr(sys.stdout, 'isatty') and sys.stdout.isatty())
        self.strategy: ReportStrategy = (JSONReportStrategy() if format_type == 'json'
                                         else TextReportStrategy())

        self.colors = {
            'pass': Fore.GREEN if self.use_color else '',
            'fail': Fore.RED if self.use_color else '',
            'error': Fore.YELLOW if self.use_color else '',
            'info': Fore.BLUE if self.use_color else '',
            'reset': Style.RESET_ALL if self.use_color else ''
        }

    def render(self, data: Dict[str, Any]) -> str:
        """Render a report with the active strategy (no colour)."""
        return self.strategy.format_report(data)

    def print_report(self, data: Dict[str, Any]) -> None:
        """Print a report to standard output."""
        text = self.render(data)
        if self.use_color:
            text = '\n'.join(self._colorize(line) for line in text.split('\n'))
        print(text)

    def print_text(self, text: str) -> None:
        """Print preformatted output (tables, samples, census records)."""
        print(text, end='' if text.endswith('\n') else '\n')

    def _colorize(self, line: str) -> str:
        key, separator, value = line.partition(': ')
        if not separator:
            return line
        value = value.strip()
        for words, color in ((UNCERTAIN_WORDS, 'error'), (NEGATIVE_WORDS, 'fail'),
                             (POSITIVE_WORDS, 'pass')):
            if any(value == word or value.startswith(word + ' ') for word in words):
                return f"{key}: {self.colors[color]}{value}{self.colors['reset']}"
        return line

    def print_info(self, message: str) -> None:
        """Print informational message to standard error.

        Args:
            message: Message to print
        """
        if self.quiet or self.format_type == 'json':
            return
        print(f"{self.colors['info']}{message}{self.colors['reset']}", file=sys.stderr)

    def print_warning(self, message: str) -> None:
        """Print warning message.

        Args:
            message: Warning message to print
        """
        color = self.colors['error']
        reset = self.colors['reset']
        print(f"{color}Warning: {message}{reset}", file=sys.stderr)

    def print_error(self, message: str) -> None:
        """Print error message.

        Args:
            message: Error message to print
        """
        color = self.colors['fail']
        reset = self.colors['reset']
        print(f"{color}Error: {message}{reset}", file=sys.stderr)
