"""
Test cases for the reproduction suite

The property criteria enumerate tens of thousands of orders, so this
module is the slowest of the suite.

While debugging just these tests it's convenient to use this:
    pytest -x tests/test_repro.py -k counterexample
"""
import time
import logging
import unittest
from unittest.mock import patch

from scalekit import config, repro
from scalekit.search import interval_on_induced_order

logging.disable(logging.CRITICAL)


######################################################################
#  R E P R O D U C T I O N   T E S T   C A S E S
######################################################################
class TestRepro(unittest.TestCase):
    """Test Cases for every criterion of the suite"""

    def assert_passes(self, number: int):
        """Runs one criterion and checks it passes"""
        (result,) = repro.run_suite((number,))
        self.assertEqual(result.number, number)
        self.assertTrue(result.passed, result.detail)
        return result

    def test_criteria_are_numbered(self):
        """It should register criteria 1 to 8"""
        self.assertEqual(sorted(repro.CRITERIA), list(range(1, 9)))

    def test_counterexample(self):
        """It should break P, R and F on the counterexample order"""
        result = self.assert_passes(1)
        self.assertIn("witness (00, 10)", result.detail)

    def test_set_based_total_order(self):
        """It should find P, R and F interval on sbto for N up to 10"""
        self.assert_passes(2)

    def test_rank_based_total_order(self):
        """It should find only RBP(1/2) interval on rbto for N up to 10"""
        self.assert_passes(3)

    def test_order_dependence(self):
        """It should match the oracle on the N=2 set-based census"""
        self.assert_passes(4)

    def test_difference_structures(self):
        """It should verify every strict order of up to 8 elements"""
        start = time.perf_counter()
        result = self.assert_passes(5)
        self.assertLess(time.perf_counter() - start, 5.0)
        self.assertIn("46232 strict orders hold", result.detail)

    def test_uniqueness_coherence(self):
        """It should agree on all 1000 sampled measure and order pairs"""
        result = self.assert_passes(6)
        self.assertTrue(result.detail.startswith("1000/1000"))

    def test_induced_order_equivalence(self):
        """It should decide interval existence from the induced order"""
        result = self.assert_passes(7)
        self.assertIn("30 measure and universe pairs agree", result.detail)

    def test_tolerance_comes_from_config(self):
        """It should compare DCG values with the configured tolerance"""
        with patch.object(config, "DCG_EPSILON", 1e-7), patch(
            "scalekit.repro.interval_on_induced_order", wraps=interval_on_induced_order
        ) as induced:
            self.assert_passes(7)
        self.assertTrue(induced.called)
        self.assertEqual({call.args[1] for call in induced.call_args_list}, {1e-7})

    def test_determinism(self):
        """It should render the same lines on a second run"""
        self.assert_passes(8)

    def test_render_and_serialize(self):
        """It should print one line per criterion and a tally"""
        results = repro.run_suite((2, 1, 1))
        self.assertEqual([result.number for result in results], [1, 2])
        text = repro.render(results)
        self.assertTrue(text.startswith("PASS 1 counterexample order: "))
        self.assertTrue(text.endswith("2/2 criteria passed\n"))
        self.assertEqual(text, repro.render(repro.run_suite((1, 2))))
        data = repro.serialize(results)
        self.assertEqual(data["report"], "repro")
        self.assertEqual((data["passed"], data["total"]), (2, 2))

    def test_failures_are_reported(self):
        """It should render FAIL when a criterion does not hold"""
        failed = repro.CriterionResult(9, "made up", False, "did not hold")
        self.assertEqual(failed.render(), "FAIL 9 made up: did not hold\n")
        self.assertEqual(repro.render([failed]), "FAIL 9 made up: did not hold\n0/1 criteria passed\n")
