"""Tests for the table, rules and sample text formats."""

import unittest
import sys
from pathlib import Path

from hypothesis import given, settings, strategies as st

# Add the parent directory to the path for imports during testing
sys.path.insert(0, str(Path(__file__).parent.parent))

from lpmkit.errors import ParseError
from lpmkit.formats import (
    parse_clause, parse_magma, parse_rules, parse_table, print_magma, print_rules,
    print_sample, print_table, tokenize
)
from lpmkit.magma import (
    Affine, Comparison, FiniteMagma, Parity, RestrictedMagma, RuleMagma, Subcarrier, Window
)
from lpmkit.registry import builtin, builtin_names
from tests.test_data_utils import (
    CATCH_ALL_RULES_TEXT, COMMENTED_TABLE_TEXT, OUT_OF_RANGE_TEXT, TRIV_TEXT, Z2_TEXT
)


def _rules(body: str, name: str = 'bad', carrier: str = 'N') -> str:
    return f"lpm-rules v1\nname {name}\ncarrier {carrier}\n{body}"


@st.composite
def finite_magmas(draw):
    """Random shape-valid tables; identities are not required."""
    n = draw(st.integers(min_value=1, max_value=4))
    entries = st.integers(min_value=0, max_value=n - 1)
    rows = st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)
    with_mul = draw(st.booleans())
    return FiniteMagma.from_rows('random', draw(entries), draw(rows) if with_mul else None,
                                 draw(rows))


class TestTableFormat(unittest.TestCase):
    """Test lpm-table v1 parsing and printing."""

    def test_parse_z2(self):
        magma = parse_table(Z2_TEXT)
        self.assertEqual(magma.name, 'z2')
        self.assertEqual(magma.size, 2)
        self.assertEqual(magma.mul_table, ((0, 1), (1, 0)))
        self.assertEqual(magma.ldiv_table, ((0, 1), (1, 0)))

    def test_parse_triv(self):
        magma = parse_table(TRIV_TEXT)
        self.assertEqual(magma.size, 1)
        self.assertEqual(magma.mul(0, 0), 0)

    def test_comments_and_blank_lines_ignored(self):
        self.assertEqual(parse_table(COMMENTED_TABLE_TEXT), parse_table(Z2_TEXT))

    def test_entry_out_of_range_position(self):
        with self.assertRaises(ParseError) as context:
            parse_table(OUT_OF_RANGE_TEXT)
        error = context.exception
        self.assertEqual((error.line, error.column), (7, 3))
        self.assertEqual(error.message, "entry out of range: 2 not in [0, 1]")
        self.assertEqual(str(error), "line 7, column 3: entry out of range: 2 not in [0, 1]")

    def test_wrong_magic(self):
        with self.assertRaises(ParseError) as context:
            parse_table(Z2_TEXT.replace('v1', 'v2', 1))
        self.assertEqual(context.exception.line, 1)
        self.assertIn("wrong magic", context.exception.message)

    def test_duplicate_section(self):
        with self.assertRaises(ParseError) as context:
            parse_table(Z2_TEXT + "ldiv\n0 1\n1 0\n")
        self.assertEqual(context.exception.line, 11)
        self.assertEqual(context.exception.message, "duplicate section 'ldiv'")

    def test_structural_errors(self):
        cases = [
            (Z2_TEXT.replace("mul\n0 1\n1 0\nldiv\n0 1\n1 0\n", "ldiv\n0 1\n1 0\nmul\n0 1\n1 0\n"),
             "section 'mul' must precede 'ldiv'"),
            (Z2_TEXT.replace("0 1\n1 0\nldiv", "0\n1 0\nldiv"), "row has 1 entries, expected 2"),
            (Z2_TEXT.replace("1 0\nldiv", "ldiv"), "section 'mul' has 1 rows, expected 2"),
            (Z2_TEXT.replace("unit 0", "unit 2"), "unit 2 out of range for size 2"),
            (Z2_TEXT.replace("size 2\n", ""), "missing header 'size' before sections"),
            (Z2_TEXT.replace("0 1\n1 0\nldiv", "0 a\n1 0\nldiv"),
             "table entry must be an integer, got 'a'"),
            (Z2_TEXT + "name again\n", "header 'name' after the table sections"),
        ]
        for text, message in cases:
            with self.subTest(message=message):
                with self.assertRaises(ParseError) as context:
                    parse_table(text)
                self.assertEqual(context.exception.message, message)

    def test_division_only_tables(self):
        text = Z2_TEXT.replace("mul\n0 1\n1 0\n", "")
        with self.assertRaises(ParseError) as context:
            parse_table(text)
        self.assertEqual(context.exception.message, "missing section 'mul'")
        magma = parse_table(text, require_mul=False)
        self.assertIsNone(magma.mul_table)
        self.assertNotIn("mul", print_table(magma))

    @settings(max_examples=60, derandomize=True, deadline=None)
    @given(finite_magmas())
    def test_print_parse_round_trip(self, magma):
        self.assertEqual(parse_table(print_table(magma), require_mul=False), magma)


class TestClauseParsing(unittest.TestCase):
    """Test the guard and result grammar."""

    def test_guard_atoms(self):
        clause = parse_clause("x < 0 && odd(y) -> (-y - 1) / 2")
        self.assertEqual(clause.guard, (Comparison('x', '<', '0'), Parity('y', even=False)))
        self.assertEqual(clause.result, Affine(b=-1, c=-1, halve=True))

    def test_flipped_comparison(self):
        clause = parse_clause("0 < x -> y")
        self.assertEqual(clause.guard, (Comparison('x', '>', '0'),))

    def test_affine_results(self):
        cases = {
            "true -> -2*y - 1": Affine(b=-2, c=-1),
            "true -> 2 * (y + 1) - x": Affine(a=-1, b=2, c=2),
            "true -> y * 3": Affine(b=3),
            "true -> 0": Affine(),
        }
        for text, expected in cases.items():
            with self.subTest(text=text):
                self.assertEqual(parse_clause(text).result, expected)

    def test_clause_errors(self):
        cases = [
            ("x ** 0 -> y", "expected comparison operator, found '*'", 3),
            ("x == 0 y", "expected '&&' or '->' after guard atom, found 'y'", 8),
            ("true -> x * y", "result is not affine (product of variables), found '*'", 11),
            ("true -> y / 3", "only exact division by 2 is allowed, found '3'", 13),
            ("x < y -> y", "Only == and != may compare x with y", 1),
            ("true ->", "missing clause result", 8),
        ]
        for text, message, column in cases:
            with self.subTest(text=text):
                with self.assertRaises(ParseError) as context:
                    parse_clause(text, line=4)
                self.assertEqual(context.exception.message, message)
                self.assertEqual(context.exception.line, 4)
                self.assertEqual(context.exception.column, column)

    def test_unexpected_character(self):
        with self.assertRaises(ParseError) as context:
            tokenize("x $ 0", line=2, offset=3)
        self.assertEqual(context.exception.column, 5)
        self.assertEqual(context.exception.message, "unexpected character '$'")


class TestRulesFormat(unittest.TestCase):
    """Test lpm-rules v1 parsing and printing."""

    def test_builtins_round_trip(self):
        for name in builtin_names():
            with self.subTest(magma=name):
                magma = builtin(name)
                self.assertEqual(parse_magma(print_magma(magma)), magma)

    def test_rules_print_ldiv_first(self):
        text = print_rules(builtin('nwp-N'))
        self.assertEqual(text.splitlines()[:5],
                         ["lpm-rules v1", "name nwp-N", "carrier N", "ldiv", "  x == 0 -> y"])

    def test_catch_all_clause(self):
        magma = parse_rules(CATCH_ALL_RULES_TEXT)
        self.assertIsInstance(magma, RuleMagma)
        self.assertEqual(magma.ldiv(-3, 4), 4)
        self.assertEqual(magma.ldiv_clauses[1].guard, ())

    def test_error_positions(self):
        with self.assertRaises(ParseError) as context:
            parse_rules(_rules("ldiv\n  x ** 0 -> y\n"))
        self.assertEqual((context.exception.line, context.exception.column), (5, 5))
        self.assertIn("expected comparison operator", context.exception.message)

    def test_structural_errors(self):
        cases = [
            (_rules("ldiv\n  true -> y\n", carrier='Q'), "carrier must be N or Z, got 'Q'"),
            (_rules("ldiv\nmul\n  true -> y\n"), "section 'ldiv' is empty"),
            (_rules("ldiv\n  true -> y\n"), "missing or empty section 'mul'"),
            (_rules("  true -> y\n"), "unexpected 'true' before any section"),
            (_rules("ldiv\n  true -> y\nldiv\n  true -> y\n"), "duplicate section 'ldiv'"),
            ("lpm-rules v1\ncarrier N\nldiv\n  true -> y\n", "missing header 'name' before sections"),
        ]
        for text, message in cases:
            with self.subTest(message=message):
                with self.assertRaises(ParseError) as context:
                    parse_rules(text)
                self.assertEqual(context.exception.message, message)

    def test_division_only_rules(self):
        magma = parse_rules(_rules("ldiv\n  true -> y\n"), require_mul=False)
        self.assertEqual(magma.mul_clauses, ())


class TestDispatchAndSamples(unittest.TestCase):
    """Test format dispatch and window samples."""

    def test_dispatch_on_magic(self):
        self.assertIsInstance(parse_magma(Z2_TEXT), FiniteMagma)
        self.assertIsInstance(parse_magma(CATCH_ALL_RULES_TEXT), RuleMagma)
        for text in ("lpm-sample v1\nname x\n", "", "# only a comment\n"):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_magma(text)

    def test_print_magma_rejects_other_types(self):
        restricted = RestrictedMagma(builtin('wp-Z'), Subcarrier.parse('nonneg'))
        with self.assertRaises(TypeError):
            print_magma(restricted)

    def test_sample_of_nwp_n(self):
        text = print_sample(builtin('nwp-N'), Window(-1, 2))
        self.assertEqual(text.splitlines(), [
            "lpm-sample v1", "name nwp-N", "window -1 2", "unit 0",
            "mul", "0: 0 1 2", "1: 1 0 1", "2: 2 0 1",
            "ldiv", "0: 0 1 2", "1: 1 2 3", "2: 1 2 3",
        ])

    def test_sample_marks_errors(self):
        magma = parse_rules(_rules("ldiv\n  x >= 0 -> y\nmul\n  true -> y\n", carrier='Z'))
        lines = print_sample(magma, Window(-1, 0)).splitlines()
        self.assertIn("-1: -1 0", lines)
        self.assertIn("-1: ? ?", lines)


if __name__ == '__main__':
    unittest.main(verbosity=2)
