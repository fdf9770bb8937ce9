"""Tests for search configuration."""

import unittest
import sys
from pathlib import Path

# Add the parent directory to the path for imports during testing
sys.path.insert(0, str(Path(__file__).parent.parent))

from lpmkit.config import (
    DEFAULT_DEPTH, DEFAULT_RANGE, DEFAULT_VALUE_BOUND, SearchConfig, derived_divisor_window
)
from lpmkit.magma import Subcarrier, Window
from lpmkit.registry import builtin


class TestSearchConfig(unittest.TestCase):
    """Test SearchConfig defaults, validation and resolution."""

    def test_defaults(self):
        config = SearchConfig()
        self.assertEqual(config.depth, DEFAULT_DEPTH)
        self.assertEqual(config.element_range, DEFAULT_RANGE)
        self.assertEqual(config.value_bound, DEFAULT_VALUE_BOUND)
        self.assertEqual(config.workers, 1)
        self.assertEqual([str(s) for s in config.subalgebras], ['all', 'nonneg', 'nonpos', 'even'])

    def test_derived_divisor_window(self):
        self.assertEqual(derived_divisor_window(Window(-128, 128)), Window(-257, 257))
        self.assertEqual(derived_divisor_window(Window(3, 5)), Window(3, 11))
        self.assertEqual(SearchConfig().divisors, Window(-257, 257))
        self.assertEqual(SearchConfig(divisor_window=Window(-1, 1)).divisors, Window(-1, 1))

    def test_validation(self):
        for options in ({'depth': 0}, {'value_bound': 0}, {'workers': 0}):
            with self.subTest(options=options):
                with self.assertRaises(ValueError):
                    SearchConfig(**options)

    def test_subalgebras_stored_as_tuple(self):
        config = SearchConfig(subalgebras=[Subcarrier.parse('even')])
        self.assertEqual(config.subalgebras, (Subcarrier.parse('even'),))

    def test_domains_clamp_for_naturals(self):
        config = SearchConfig(element_range=Window(-5, 5))
        self.assertEqual(config.range_domain(builtin('nwp-N')).elements, tuple(range(6)))
        self.assertEqual(config.divisor_domain(builtin('nwp-N')).label, "window [0, 11]")
        self.assertTrue(config.range_domain(builtin('z2')).exhaustive)

    def test_to_dict(self):
        config = SearchConfig(element_range=Window(-5, 5))
        self.assertEqual(config.to_dict(builtin('wp-Z')), {
            'depth': DEFAULT_DEPTH,
            'range': "window [-5, 5]",
            'divisors': "window [-11, 11]",
            'value bound': DEFAULT_VALUE_BOUND,
            'subalgebras': ['all', 'nonneg', 'nonpos', 'even'],
        })
        finite = config.to_dict(builtin('z2'))
        self.assertEqual(finite['depth'], 2)
        self.assertEqual(finite['range'], "full carrier (2 elements)")
        self.assertEqual(config.to_dict()['range'], "[-5, 5]")


if __name__ == '__main__':
    unittest.main(verbosity=2)
