"""lpmkit - computable left pseudocancellative unital magmas

This package represents LPMs as finite tables or piecewise integer rules,
checks their identities, searches weak-protomodularity witnesses, classifies
along the inclusion chain and enumerates small finite LPMs.
"""

# Version will be managed by semantic-release
__version__ = "0.1.0"

# Import main functionality
from .errors import (
    LpmError, ParseError, EvaluationError, ClosureError, PreconditionError,
    UnknownBuiltinError, EnumerationLimitError
)
from .magma import (
    Carrier, Window, FiniteMagma, RuleMagma, Subcarrier, RestrictedMagma, mul, ldiv
)
from .checks import (
    check_identity1, check_identity2, check_identity3, check_xdivx, is_lpm, is_left_loop,
    check_props, construct_mul_from_div, restrict, magmas_equal_on
)
from .config import SearchConfig
from .formats import parse_table, parse_rules, parse_magma, print_magma, print_sample
from .registry import builtin, builtin_descriptions, load_magma
from .terms import parse_term, evaluate, normalize, kernel_member, chain_term
from .protomod import (
    verify_witness, witness_search, reachable_set, is_weakly_protomodular,
    refute_protomodular_by_subalgebra, classify
)
from .census import EnumConfig, enumerate_lpms, count_lpms, canonical_form
from .output import OutputFormatter
from .cli import main

# Define what gets imported with "from lpmkit import *"
__all__ = [
    # Errors
    "LpmError", "ParseError", "EvaluationError", "ClosureError", "PreconditionError",
    "UnknownBuiltinError", "EnumerationLimitError",

    # Structures and checks
    "Carrier", "Window", "FiniteMagma", "RuleMagma", "Subcarrier", "RestrictedMagma",
    "mul", "ldiv", "check_identity1", "check_identity2", "check_identity3", "check_xdivx",
    "is_lpm", "is_left_loop", "check_props", "construct_mul_from_div", "restrict",
    "magmas_equal_on",

    # Formats and builtins
    "parse_table", "parse_rules", "parse_magma", "print_magma", "print_sample",
    "builtin", "builtin_descriptions", "load_magma",

    # Terms
    "parse_term", "evaluate", "normalize", "kernel_member", "chain_term",

    # Protomodularity
    "SearchConfig", "verify_witness", "witness_search", "reachable_set",
    "is_weakly_protomodular", "refute_protomodular_by_subalgebra", "classify",

    # Census
    "EnumConfig", "enumerate_lpms", "count_lpms", "canonical_form",

    # Output and CLI entry point
    "OutputFormatter", "main"
]
