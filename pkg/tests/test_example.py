#!/usr/bin/env python3
"""
🧪 UNIT TESTS FOR THE EMBEDDED WORKED EXAMPLE
"""

import unittest
from fractions import Fraction

from depmod.errors import InvariantViolation
from depmod.example import FIXTURES, evaluate_condition, run_walkthrough


class TestWalkthrough(unittest.TestCase):

    def test_golden_values_in_output(self):
        text = "\n".join(run_walkthrough())
        self.assertIn("57/20 (2.85)", text)
        self.assertIn("33/20 (1.65)", text)
        self.assertIn("Condition (b)", text)

    def test_deterministic(self):
        self.assertEqual(run_walkthrough(), run_walkthrough())

    def test_condition_results(self):
        result = evaluate_condition("b", FIXTURES["b"])
        self.assertEqual(result.published_delta, Fraction(57, 20))
        self.assertEqual(result.evaluation.delta_q, Fraction(1, 5))
        self.assertEqual(result.violations, 1)

    def test_tampered_fixture(self):
        """Swapping the fixtures breaks the golden comparison"""
        with self.assertRaises(InvariantViolation):
            run_walkthrough({"a": FIXTURES["a"], "b": FIXTURES["a"]})

    def test_broken_fixture(self):
        """A fixture that does not even parse is reported as a failed self-check"""
        with self.assertRaises(InvariantViolation):
            run_walkthrough({"a": FIXTURES["a"], "b": "node 1 C2\nedge 1 1\n"})


if __name__ == "__main__":
    unittest.main()
