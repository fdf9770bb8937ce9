"""Command-line interface for lpmkit.

This module provides the ``lpmkit`` entry point: one argparse subcommand per
capability, deterministic reports on standard output and diagnostics on
standard error.

Exit codes: 0 success or positive verdict, 1 property violated, refutation
or search without result, 2 usage or input error, 130 interrupted.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from . import __version__
from .census import EnumConfig, count_lpms, enumerate_lpms, format_census
from .checks import (
    check_identity1, check_identity2, check_identity3, check_props, check_xdivx,
    construct_mul_from_div
)
from .config import DEFAULT_DEPTH, DEFAULT_RANGE, DEFAULT_VALUE_BOUND, SearchConfig
from .data_structures import ProtoStatus
from .errors import LpmError, ParseError, PreconditionError
from .formats import print_sample, print_table
from .magma import FiniteMagma, Magma, RuleMagma, Subcarrier, Window
from .output import OutputFormatter
from .protomod import classify, verify_witness, witness_search
from .registry import builtin_descriptions, load_magma
from .terms import Normalizer, evaluate, kernel_member, parse_term

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', default=default(False),
                        help='Emit reports as JSON')
    common.add_argument('--no-color', action='store_true', default=default(False),
                        help='Disable colored output')
    common.add_argument('--verbose', '-v', action='count', default=default(0),
                        help='Log search progress to stderr (repeat for debug)')
    common.add_argument('--quiet', '-q', action='store_true', default=default(False),
                        help='Suppress informational messages')
    return common


def _window_argument(parser: argparse.ArgumentParser, flag: str, help_text: str) -> None:
    parser.add_argument(flag, nargs=2, type=int, metavar=('LO', 'HI'), help=help_text)


def _search_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--depth', type=int, default=DEFAULT_DEPTH,
                        help=f'Maximum witness chain length (default: {DEFAULT_DEPTH})')
    _window_argument(parser, '--divisor-window',
                     'Divisors tried at each step (default: derived from the range)')
    parser.add_argument('--value-bound', type=int, default=DEFAULT_VALUE_BOUND,
                        help='Prune states with a larger absolute value')


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser for the lpmkit CLI.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog='lpmkit',
        description='Check, classify and enumerate left pseudocancellative unital magmas',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[_common_options(suppress=False)],
        epilog="""
Examples:
  lpmkit examples                                  # List builtin magmas
  lpmkit check builtin:pnl-N --window 0 100        # Identities and derived properties
  lpmkit classify builtin:wp-Z --subalgebra nonneg # Place on the inclusion chain
  lpmkit witness builtin:wp-Z --element 5          # Shortest witness chain
  lpmkit enumerate --order 3 --count-only          # Census of small LPMs
  lpmkit eval builtin:z2 --term "(1 * 1)" --normalize
        """
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    common = _common_options(suppress=True)
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    check = commands.add_parser('check', parents=[common],
                                help='Check identities (1)-(3), x\\x = e and derived properties')
    check.add_argument('source', help='Magma file or builtin:NAME')
    _window_argument(check, '--window', f'Scan window for infinite carriers (default: {DEFAULT_RANGE})')

    classify_cmd = commands.add_parser('classify', parents=[common],
                                       help='Classify along the inclusion chain')
    classify_cmd.add_argument('source', help='Magma file or builtin:NAME')
    _window_argument(classify_cmd, '--range', f'Element range (default: {DEFAULT_RANGE})')
    _search_arguments(classify_cmd)
    classify_cmd.add_argument('--subalgebra', action='append', metavar='PRED',
                              help='Candidate subalgebra: all, nonneg, nonpos, even or {a,b,...} '
                                   '(repeatable; default: all nonneg nonpos even)')
    classify_cmd.add_argument('--workers', type=int, default=1,
                              help='Threads for per-element witness searches')

    witness = commands.add_parser('witness', parents=[common],
                                  help='Search a weak-protomodularity witness chain')
    witness.add_argument('source', help='Magma file or builtin:NAME')
    witness.add_argument('--element', type=int, required=True, help='Element to find a chain for')
    _search_arguments(witness)

    enumerate_cmd = commands.add_parser('enumerate', parents=[common],
                                        help='Enumerate finite LPMs of a given order')
    enumerate_cmd.add_argument('--order', type=int, required=True, help='Carrier size')
    enumerate_cmd.add_argument('--up-to-iso', action='store_true',
                               help='One representative per isomorphism class')
    enumerate_cmd.add_argument('--count-only', action='store_true', help='Print only the count')
    enumerate_cmd.add_argument('--left-loops-only', action='store_true',
                               help='Keep only structures satisfying identity (2)')
    enumerate_cmd.add_argument('--allow-large', action='store_true',
                               help='Allow orders above the soft limit')

    eval_cmd = commands.add_parser('eval', parents=[common], help='Evaluate a term')
    eval_cmd.add_argument('source', help='Magma file or builtin:NAME')
    eval_cmd.add_argument('--term', required=True, help='Term, e.g. "(3 * (3 \\ z))"')
    eval_cmd.add_argument('--assign', default='', metavar='k=v,...',
                          help='Generator assignment')
    eval_cmd.add_argument('--normalize', action='store_true', help='Also print the normal form')

    kernel = commands.add_parser('kernel', parents=[common],
                                 help='Test whether a term in z evaluates to e at a point')
    kernel.add_argument('source', help='Magma file or builtin:NAME')
    kernel.add_argument('--point', type=int, required=True, help='Value of z')
    kernel.add_argument('--term', required=True, help='Term in the generator z')

    construct = commands.add_parser('construct-mul', parents=[common],
                                    help='Build * from a division structure')
    construct.add_argument('source', help='Division file (mul section optional) or builtin:NAME')
    _window_argument(construct, '--window',
                     f'Construction window for rule files (default: {DEFAULT_RANGE})')

    commands.add_parser('examples', parents=[common], help='List builtin magmas')

    return parser


def configure_logging(verbosity: int, quiet: bool) -> None:
    """Route library logging to standard error at the requested level."""
    if quiet:
        level = logging.ERROR
    elif verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s', force=True)


def parse_window(values: Optional[List[int]]) -> Optional[Window]:
    return None if values is None else Window(values[0], values[1])


def parse_assignment(text: str) -> Dict[str, int]:
    """Parse ``k=v,k=v`` into a generator assignment.

    Raises:
        ValueError: On a malformed pair
    """
    assignment = {}
    for item in filter(None, (part.strip() for part in text.split(','))):
        name, separator, value = item.partition('=')
        if not separator or not name.strip():
            raise ValueError(f"malformed assignment '{item}', expected k=v")
        assignment[name.strip()] = int(value)
    return assignment


def _scan_window(magma: Magma, values: Optional[List[int]]) -> Optional[Window]:
    if magma.is_finite:
        return parse_window(values)
    window = parse_window(values) or DEFAULT_RANGE
    return window.clamp(magma.carrier) if isinstance(magma, RuleMagma) else window


# Commands ------------------------------------------------------------------

def cmd_check(args: argparse.Namespace, output: OutputFormatter) -> int:
    magma = load_magma(args.source)
    window = _scan_window(magma, args.window)
    identities = [check(magma, window) for check in
                  (check_identity1, check_identity2, check_identity3, check_xdivx)]
    props = check_props(magma, window)

    report: Dict[str, Any] = {'magma': magma.name, 'carrier': magma.carrier_label,
                              'domain': identities[0].domain.label}
    for item in identities:
        report[item.name] = item.to_dict()
    report['properties'] = props.to_dict()
    output.print_report(report)

    required = [identities[0], identities[1], identities[2], props.division, props.diagonal]
    return EXIT_OK if all(item.passed for item in required) else EXIT_NEGATIVE


def build_search_config(args: argparse.Namespace) -> SearchConfig:
    """SearchConfig from classify/witness arguments."""
    options: Dict[str, Any] = {
        'depth': args.depth,
        'divisor_window': parse_window(args.divisor_window),
        'value_bound': args.value_bound,
    }
    if getattr(args, 'range', None) is not None:
        options['element_range'] = parse_window(args.range)
    if getattr(args, 'workers', None) is not None:
        options['workers'] = args.workers
    if getattr(args, 'subalgebra', None):
        options['subalgebras'] = tuple(Subcarrier.parse(text) for text in args.subalgebra)
    return SearchConfig(**options)


def cmd_classify(args: argparse.Namespace, output: OutputFormatter) -> int:
    magma = load_magma(args.source)
    config = build_search_config(args)
    report = classify(magma, config)
    if not report.hierarchy_consistent():
        output.print_warning("verdicts break the inclusion chain; check the windows")
    output.print_report(report.to_dict())
    proved = report.protomodular.status is ProtoStatus.PROVED_BY_XDIVX
    return EXIT_OK if proved else EXIT_NEGATIVE


def cmd_witness(args: argparse.Namespace, output: OutputFormatter) -> int:
    magma = load_magma(args.source)
    config = build_search_config(args)
    outcome = witness_search(magma, args.element, config.depth,
                             None if magma.is_finite else config.divisors, config.value_bound)
    report: Dict[str, Any] = {'magma': magma.name, 'element': args.element}
    if outcome.found:
        report['chain'] = outcome.chain.render(magma.unit)
        report['length'] = len(outcome.chain)
        report['verified'] = verify_witness(magma, args.element, outcome.chain)
    else:
        report['chain'] = 'none within bounds'
    report['depth'] = outcome.depth
    report['divisors'] = outcome.divisors
    report['explored states'] = outcome.explored
    if outcome.pruned:
        report['pruned states'] = outcome.pruned
    output.print_report(report)
    return EXIT_OK if outcome.found else EXIT_NEGATIVE


def _table_dict(magma: FiniteMagma) -> Dict[str, Any]:
    return {'name': magma.name, 'size': magma.size, 'unit': magma.unit_index,
            'mul': [list(row) for row in magma.mul_table],
            'ldiv': [list(row) for row in magma.ldiv_table]}


def cmd_enumerate(args: argparse.Namespace, output: OutputFormatter) -> int:
    config = EnumConfig(args.order, up_to_iso=args.up_to_iso, count_only=args.count_only,
                        left_loops_only=args.left_loops_only, allow_large=args.allow_large)
    if config.count_only:
        count = count_lpms(config.order, config.up_to_iso, config.left_loops_only,
                           config.allow_large)
        output.print_report({'order': config.order, 'up to iso': config.up_to_iso,
                             'left loops only': config.left_loops_only, 'count': count})
        return EXIT_OK

    magmas = list(enumerate_lpms(config))
    if output.format_type == 'json':
        output.print_report({'order': config.order, 'count': len(magmas),
                             'structures': [_table_dict(m) for m in magmas]})
    else:
        output.print_text(format_census(magmas))
    output.print_info(f"{len(magmas)} structure(s) of order {config.order}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, output: OutputFormatter) -> int:
    magma = load_magma(args.source)
    term = parse_term(args.term)
    assignment = parse_assignment(args.assign)
    report: Dict[str, Any] = {'magma': magma.name, 'term': str(term),
                              'value': evaluate(term, magma, assignment)}
    if args.normalize:
        normalizer = Normalizer(magma)
        normal = normalizer.normalize(term)
        report['normal form'] = str(normal)
        report['rewrite steps'] = normalizer.steps
    output.print_report(report)
    return EXIT_OK


def cmd_kernel(args: argparse.Namespace, output: OutputFormatter) -> int:
    magma = load_magma(args.source)
    term = parse_term(args.term)
    member = kernel_member(magma, args.point, term)
    output.print_report({
        'magma': magma.name,
        'term': str(term),
        'point': args.point,
        'value': evaluate(term, magma, {'z': args.point}),
        'in kernel': member,
    })
    return EXIT_OK if member else EXIT_NEGATIVE


def cmd_construct_mul(args: argparse.Namespace, output: OutputFormatter) -> int:
    division = load_magma(args.source, require_mul=False)
    window = _scan_window(division, args.window)
    try:
        constructed = construct_mul_from_div(division, window)
    except PreconditionError as e:
        output.print_error(str(e))
        if e.report is not None:
            output.print_report({'precondition': e.report.name, **e.report.to_dict()})
        return EXIT_NEGATIVE

    if isinstance(constructed, FiniteMagma):
        text = print_table(constructed)
    else:
        text = print_sample(constructed, window)
    if output.format_type == 'json':
        output.print_report({'magma': constructed.name, 'text': text})
    else:
        output.print_text(text)
    return EXIT_OK


def cmd_examples(args: argparse.Namespace, output: OutputFormatter) -> int:
    output.print_report({name: provenance for name, provenance in builtin_descriptions()})
    return EXIT_OK


COMMANDS = {
    'check': cmd_check,
    'classify': cmd_classify,
    'witness': cmd_witness,
    'enumerate': cmd_enumerate,
    'eval': cmd_eval,
    'kernel': cmd_kernel,
    'construct-mul': cmd_construct_mul,
    'examples': cmd_examples,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the lpmkit CLI.

    Args:
        argv: Arguments (defaults to ``sys.argv[1:]``)

    Returns:
        Exit code
    """
    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    output = OutputFormatter(
        format_type='json' if args.json else 'text',
        use_color=not args.no_color,
        verbosity=args.verbose,
        quiet=args.quiet
    )

    try:
        return COMMANDS[args.command](args, output)
    except KeyboardInterrupt:
        output.print_error("interrupted")
        return EXIT_INTERRUPTED
    except PreconditionError as e:
        output.print_error(str(e))
        return EXIT_NEGATIVE
    except ParseError as e:
        output.print_error(f"parse error: {e}")
        return EXIT_USAGE
    except (LpmError, ValueError, OSError) as e:
        output.print_error(str(e))
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
