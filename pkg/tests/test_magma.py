"""Tests for the lpmkit data model.

This module tests windows, guard atoms, affine results, finite and rule
magmas, domains and subcarriers.
"""

import unittest
import sys
from pathlib import Path

# Add the parent directory to the path for imports during testing
sys.path.insert(0, str(Path(__file__).parent.parent))

from lpmkit.errors import EvaluationError
from lpmkit.magma import (
    Affine, Carrier, Clause, Comparison, FiniteMagma, Parity, Predicate, RestrictedMagma,
    RuleMagma, Subcarrier, Window, ldiv, mul, resolve_domain
)
from lpmkit.registry import builtin
from tests.test_data_utils import CASE_TABLES


class TestWindow(unittest.TestCase):
    """Test Window bounds and clamping."""

    def test_iteration_is_ascending_and_inclusive(self):
        self.assertEqual(list(Window(-2, 2)), [-2, -1, 0, 1, 2])
        self.assertEqual(len(Window(3, 3)), 1)

    def test_inverted_bounds_rejected(self):
        with self.assertRaises(ValueError):
            Window(5, 4)

    def test_clamp_to_naturals(self):
        self.assertEqual(Window(-10, 7).clamp(Carrier.N), Window(0, 7))
        self.assertEqual(Window(-10, 7).clamp(Carrier.Z), Window(-10, 7))
        with self.assertRaises(ValueError):
            Window(-10, -1).clamp(Carrier.N)

    def test_membership_and_text(self):
        window = Window(-1, 1)
        self.assertIn(0, window)
        self.assertNotIn(2, window)
        self.assertEqual(str(window), "[-1, 1]")
        self.assertEqual(window.to_dict(), {'lo': -1, 'hi': 1})


class TestGuardAtoms(unittest.TestCase):
    """Test Comparison and Parity atoms."""

    def test_comparison_with_zero(self):
        atom = Comparison('x', '>=', '0')
        self.assertTrue(atom.holds(0, -5))
        self.assertFalse(atom.holds(-1, 5))
        self.assertEqual(str(atom), "x >= 0")

    def test_comparison_between_variables(self):
        atom = Comparison('x', '!=', 'y')
        self.assertTrue(atom.holds(1, 2))
        self.assertFalse(atom.holds(3, 3))

    def test_invalid_comparisons_rejected(self):
        for left, op, right in [('z', '==', '0'), ('x', '=>', '0'), ('x', '==', 'x'),
                                ('x', '<', 'y'), ('x', '==', '1')]:
            with self.subTest(atom=(left, op, right)):
                with self.assertRaises(ValueError):
                    Comparison(left, op, right)

    def test_parity_handles_negative_values(self):
        self.assertTrue(Parity('y', even=False).holds(0, -7))
        self.assertTrue(Parity('y', even=True).holds(0, -10))
        self.assertEqual(str(Parity('x', even=True)), "even(x)")

    def test_variable_on_the_left_of_comparison(self):
        atom = Comparison('y', '<', '0')
        self.assertTrue(atom.holds(5, -1))
        self.assertFalse(atom.holds(-5, 1))
        self.assertTrue(Comparison('y', '==', 'x').holds(4, 4))

    def test_clause_guard_is_a_conjunction(self):
        clause = Clause((Comparison('x', '<', '0'), Parity('y', even=False)), Affine(b=1))
        self.assertTrue(clause.matches(-1, 3))
        self.assertFalse(clause.matches(-1, 2))
        self.assertFalse(clause.matches(1, 3))
        self.assertTrue(Clause((), Affine()).matches(9, -9))


class TestAffine(unittest.TestCase):
    """Test affine result expressions."""

    def test_rendering(self):
        cases = [
            (Affine(), "0"),
            (Affine(a=1), "x"),
            (Affine(b=1, c=1), "y + 1"),
            (Affine(b=-2, c=-1), "-2*y - 1"),
            (Affine(b=2), "2*y"),
            (Affine(b=-1, c=-1, halve=True), "(-y - 1) / 2"),
            (Affine(b=1, halve=True), "y / 2"),
            (Affine(b=-1, halve=True), "(-y) / 2"),
        ]
        for affine, text in cases:
            with self.subTest(text=text):
                self.assertEqual(str(affine), text)

    def test_exact_halving(self):
        self.assertEqual(Affine(b=-1, c=-1, halve=True).evaluate(-1, -7), 3)
        with self.assertRaises(EvaluationError):
            Affine(b=1, halve=True).evaluate(0, 3)

    def test_empty_guard_prints_true(self):
        self.assertEqual(str(Clause((), Affine(b=1))), "true -> y")


class TestFiniteMagma(unittest.TestCase):
    """Test table-backed magmas."""

    def setUp(self):
        self.z2 = FiniteMagma.from_rows('z2', 0, [[0, 1], [1, 0]], [[0, 1], [1, 0]])

    def test_lookup(self):
        self.assertEqual(mul(self.z2, 1, 1), 0)
        self.assertEqual(ldiv(self.z2, 0, 1), 1)
        self.assertEqual(self.z2.elements(), (0, 1))
        self.assertEqual(self.z2.carrier_label, "{0..1}")

    def test_index_out_of_range(self):
        with self.assertRaises(EvaluationError) as context:
            self.z2.mul(2, 0)
        self.assertEqual(context.exception.operation, 'mul')
        self.assertEqual(context.exception.operands, (2, 0))

    def test_shape_and_range_validation(self):
        with self.assertRaises(ValueError):
            FiniteMagma.from_rows('bad', 0, [[0, 1]], [[0, 1], [1, 0]])
        with self.assertRaises(ValueError):
            FiniteMagma.from_rows('bad', 0, [[0, 2], [1, 0]], [[0, 1], [1, 0]])
        with self.assertRaises(ValueError):
            FiniteMagma.from_rows('bad', 2, [[0, 1], [1, 0]], [[0, 1], [1, 0]])

    def test_identities_not_validated_at_construction(self):
        broken = self.z2.with_entry('mul', 1, 1, 1)
        self.assertEqual(broken.mul(1, 1), 1)
        self.assertEqual(self.z2.mul(1, 1), 0)

    def test_division_only_magma(self):
        division = FiniteMagma.from_rows('div', 0, None, [[0, 1], [1, 0]])
        self.assertEqual(division.ldiv(1, 0), 1)
        with self.assertRaises(EvaluationError):
            division.mul(0, 0)


class TestRuleMagma(unittest.TestCase):
    """Test rule-backed magmas."""

    def test_case_tables(self):
        for name, rows in CASE_TABLES.items():
            magma = builtin(name)
            for operation, x, y, expected in rows:
                with self.subTest(magma=name, operation=operation, x=x, y=y):
                    self.assertEqual(getattr(magma, operation)(x, y), expected)

    def test_unit_is_zero(self):
        for name in ('nwp-N', 'wp-Z', 'pnl-N'):
            magma = builtin(name)
            self.assertEqual(magma.unit, 0)
            self.assertFalse(magma.is_finite)
            for a in range(-3 if name == 'wp-Z' else 0, 4):
                self.assertEqual(magma.mul(0, a), a)
                self.assertEqual(magma.ldiv(0, a), a)

    def test_operand_outside_carrier(self):
        with self.assertRaises(EvaluationError):
            builtin('nwp-N').mul(-1, 0)

    def test_no_matching_clause(self):
        gap = RuleMagma('gap', Carrier.Z, (),
                        (Clause((Comparison('x', '>', '0'),), Affine(b=1)),))
        with self.assertRaises(EvaluationError) as context:
            gap.ldiv(-1, 0)
        self.assertIn("no ldiv clause matches", str(context.exception))
        with self.assertRaises(EvaluationError):
            gap.mul(1, 1)

    def test_result_outside_carrier(self):
        shrink = RuleMagma('shrink', Carrier.N, (), (Clause((), Affine(b=1, c=-1)),))
        with self.assertRaises(EvaluationError) as context:
            shrink.ldiv(0, 0)
        self.assertIn("outside carrier", str(context.exception))

    def test_first_match_wins(self):
        magma = RuleMagma('ordered', Carrier.Z, (), (
            Clause((Comparison('x', '==', '0'),), Affine(b=1)),
            Clause((), Affine(c=7)),
        ))
        self.assertEqual(magma.ldiv(0, 3), 3)
        self.assertEqual(magma.ldiv(1, 3), 7)

    def test_elements_require_window(self):
        with self.assertRaises(TypeError):
            builtin('wp-Z').elements()

    def test_dispatch_follows_first_matching_clause(self):
        magma = builtin('wp-Z')
        for operation in ('mul', 'ldiv'):
            clauses = getattr(magma, f"{operation}_clauses")
            for x in range(-6, 7):
                for y in range(-6, 7):
                    clause = next(c for c in clauses if c.matches(x, y))
                    with self.subTest(operation=operation, x=x, y=y):
                        self.assertEqual(getattr(magma, operation)(x, y),
                                         clause.result.evaluate(x, y))


class TestDomains(unittest.TestCase):
    """Test domain resolution."""

    def test_finite_defaults_to_full_carrier(self):
        domain = resolve_domain(builtin('z2'))
        self.assertEqual(domain.elements, (0, 1))
        self.assertTrue(domain.exhaustive)
        self.assertEqual(domain.label, "full carrier (2 elements)")

    def test_infinite_needs_window(self):
        with self.assertRaises(ValueError):
            resolve_domain(builtin('wp-Z'))

    def test_window_clamped_for_naturals(self):
        domain = resolve_domain(builtin('nwp-N'), Window(-5, 5))
        self.assertEqual(domain.elements, tuple(range(6)))
        self.assertFalse(domain.exhaustive)
        self.assertEqual(domain.label, "window [0, 5]")


class TestSubcarriers(unittest.TestCase):
    """Test subcarrier predicates and restricted magmas."""

    def test_parse_predicates(self):
        self.assertEqual(Subcarrier.parse('nonneg').predicate, Predicate.NONNEG)
        finite = Subcarrier.parse('{3, 1,1}')
        self.assertEqual(finite.members, (1, 3))
        self.assertEqual(str(finite), "{1,3}")
        with self.assertRaises(ValueError):
            Subcarrier.parse('odd')

    def test_membership(self):
        self.assertTrue(Subcarrier.parse('nonpos').contains(-4))
        self.assertFalse(Subcarrier.parse('nonneg').contains(-4))
        self.assertTrue(Subcarrier.parse('even').contains(-4))
        self.assertFalse(Subcarrier.parse('{0,2}').contains(1))

    def test_restricted_magma_delegates(self):
        restricted = RestrictedMagma(builtin('wp-Z'), Subcarrier.parse('nonneg'))
        self.assertEqual(restricted.name, "wp-Z|nonneg")
        self.assertEqual(restricted.mul(2, 3), 2)
        self.assertFalse(restricted.is_finite)
        with self.assertRaises(EvaluationError):
            restricted.mul(-1, 2)

    def test_finite_set_restriction_is_finite(self):
        restricted = RestrictedMagma(builtin('wp-Z'), Subcarrier.parse('{0,-1}'))
        self.assertTrue(restricted.is_finite)
        self.assertEqual(restricted.elements(), (-1, 0))


if __name__ == '__main__':
    unittest.main(verbosity=2)
