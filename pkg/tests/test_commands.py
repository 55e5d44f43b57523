"""
ScaleKit Command Line Test Suite

Test cases can be run with the following:
  pytest
  coverage report -m

  While debugging just these tests it's convenient to use this:
    pytest -x tests/test_commands.py
"""
import os
import json
import logging
import tempfile
from unittest import TestCase
from unittest.mock import patch

from jsonschema import validate

from scalekit import app
from scalekit.commands import RunConfig, report_schema, run
from scalekit.common import status
from scalekit.measures import MeasureKind
from scalekit.universe import Mode

# Disable all but critical errors during normal test run
# uncomment for debugging failing tests
logging.disable(logging.CRITICAL)


######################################################################
#  T E S T   C A S E S
######################################################################
# pylint: disable=too-many-public-methods
class TestCommands(TestCase):
    """ScaleKit command line tests"""

    @classmethod
    def setUpClass(cls):
        """Run once before all tests"""
        app.config["TESTING"] = True
        app.config["DEBUG"] = False
        cls.schema = report_schema()

    def setUp(self):
        """Runs before each test"""
        self.runner = app.test_cli_runner()

    ######################################################################
    #  H E L P E R S
    ######################################################################

    def invoke(self, *args, exit_code=status.EXIT_0_OK):
        """Runs one command line and checks its exit status"""
        result = self.runner.invoke(args=list(args))
        self.assertEqual(result.exit_code, exit_code, result.output)
        return result

    def report(self, *args):
        """Runs one command line and returns its schema-checked JSON report"""
        data = json.loads(self.invoke(*args).output)
        validate(data, self.schema)
        return data

    ######################################################################
    #  U N I V E R S E
    ######################################################################

    def test_universe(self):
        """It should list the four rank-based lists of length 2"""
        data = self.report("universe", "--mode", "rank", "--n", "2")
        self.assertEqual(data["report"], "universe")
        self.assertEqual(data["size"], 4)
        self.assertEqual(data["elements"], ["00", "01", "10", "11"])

    def test_universe_as_text(self):
        """It should list one element per line"""
        result = self.invoke("universe", "--mode", "set", "--n", "3", "--format", "text")
        self.assertEqual(result.output, "000\n100\n110\n111\n")

    ######################################################################
    #  M E A S U R E
    ######################################################################

    def test_measure(self):
        """It should tabulate a measure with exact values"""
        data = self.report("measure", "--mode", "rank", "--n", "2", "--measure", "rbp", "--p", "1/2")
        self.assertEqual(data["measure"], "rbp(p=1/2)")
        self.assertEqual([v["value_exact"] for v in data["values"]], ["0", "1/4", "1/2", "3/4"])

    def test_measure_as_csv(self):
        """It should export a measure as CSV"""
        result = self.invoke(
            "measure", "--mode", "set", "--n", "2", "--measure", "precision", "--format", "csv"
        )
        self.assertEqual(
            result.output, "element,value_exact,value_float\n00,0,0.0\n10,1/2,0.5\n11,1,1.0\n"
        )

    def test_measure_as_text(self):
        """It should print a titled table"""
        result = self.invoke("measure", "--n", "1", "--measure", "err", "--format", "text")
        self.assertEqual(result.output, "# err\n0\t0\n1\t1/2\n")

    def test_dcg_measure(self):
        """It should render DCG as a decimal string"""
        data = self.report("measure", "--n", "2", "--measure", "dcg")
        self.assertTrue(data["values"][3]["value_exact"].startswith("1.6309297535714574"))

    ######################################################################
    #  C H E C K
    ######################################################################

    def test_check_counterexample(self):
        """It should report the counterexample witness for precision"""
        data = self.report(
            "check", "--mode", "set", "--n", "2", "--measure", "precision",
            "--ordering", "paper-counterexample",
        )
        self.assertEqual(data["verdict"], "not-ordinal")
        self.assertEqual(data["witnesses"][0]["elements"], ["00", "10"])
        self.assertEqual(data["witnesses"][0]["values"], ["0", "1/2"])
        self.assertEqual(data["provenance"], "paper")

    def test_check_rbp_interval(self):
        """It should find RBP(1/2) interval on rbto with spacing 1/16"""
        data = self.report(
            "check", "--mode", "rank", "--n", "4", "--measure", "rbp", "--p", "1/2",
            "--ordering", "rbto",
        )
        self.assertEqual(data["report"], "interval")
        self.assertEqual(data["verdict"], "interval")
        self.assertEqual(data["spacing"], "1/16")
        self.assertEqual(list(data)[:6], ["report", "measure", "ordering", "provenance", "kind", "verdict"])

    def test_check_induced(self):
        """It should check a measure on the order it induces"""
        data = self.report("check", "--n", "2", "--measure", "ap", "--ordering", "induced")
        self.assertEqual(data["ordering"], "induced(ap)")
        self.assertEqual(data["provenance"], "measure-induced")
        self.assertEqual(data["verdict"], "ordinal-not-interval")

    def test_check_ordering_file(self):
        """It should read weak and partial orders from files"""
        with tempfile.TemporaryDirectory() as folder:
            weak = os.path.join(folder, "ties.txt")
            with open(weak, "w", encoding="utf-8") as ordering_file:
                ordering_file.write("00\n01,10\n11\n")
            data = self.report("check", "--n", "2", "--measure", "precision", "--ordering", weak)
            self.assertEqual(data["verdict"], "interval")
            self.assertEqual(data["ordering"], "ties.txt")
            self.assertEqual(data["provenance"], "file")

            partial = os.path.join(folder, "diamond.txt")
            with open(partial, "w", encoding="utf-8") as ordering_file:
                ordering_file.write("partial\n00 < 01\n00 < 10\n01 < 11\n10 < 11\n")
            data = self.report("check", "--n", "2", "--measure", "precision", "--ordering", partial)
            self.assertEqual(data["report"], "ordinal")
            self.assertEqual(data["verdict"], "weakly-represents")
            self.assertEqual(data["incomparable_pairs"], 1)

    def test_check_as_text(self):
        """It should print the verdict and the spacing"""
        result = self.invoke(
            "check", "--n", "3", "--measure", "rbp", "--p", "1/2", "--ordering", "rbto",
            "--format", "text",
        )
        self.assertEqual(
            result.output, "rbp(p=1/2) on rbto (reconstruction, strict-total): interval\n  spacing 1/8\n"
        )

    def test_failed_check_exits_zero(self):
        """It should exit 0 when a measure fails a scale check"""
        data = self.report("check", "--n", "3", "--measure", "rbp", "--p", "3/4", "--ordering", "rbto")
        self.assertEqual(data["verdict"], "not-ordinal")

    def test_check_is_deterministic(self):
        """It should print the same bytes for the same flags"""
        args = ("check", "--n", "3", "--measure", "dcg", "--ordering", "rbto")
        self.assertEqual(self.invoke(*args).output, self.invoke(*args).output)

    ######################################################################
    #  D I F F S T R U C T   A N D   C E N S U S
    ######################################################################

    def test_diffstruct(self):
        """It should verify the difference structure of rbto"""
        data = self.report("diffstruct", "--n", "2", "--ordering", "rbto")
        self.assertTrue(data["verdict"])
        self.assertIsNone(data["failed_axiom"])
        result = self.invoke("diffstruct", "--n", "2", "--ordering", "rbto", "--format", "text")
        self.assertEqual(result.output, "difference structure on rbto (reconstruction): holds\n")

    def test_census(self):
        """It should count precision on 1 of 13 weak orders"""
        data = self.report(
            "census", "--mode", "set", "--n", "2", "--measure", "precision", "--measure", "recall",
            "--order-space", "weak",
        )
        self.assertEqual(len(data["entries"]), 2)
        entry = data["entries"][0]
        self.assertEqual((entry["examined"], entry["interval_count"]), (13, 1))
        self.assertEqual(entry["witnesses"]["interval"], ["00\n10\n11\n"])

    def test_census_with_several_persistences(self):
        """It should run one census entry per RBP persistence"""
        data = self.report(
            "census", "--n", "2", "--measure", "rbp", "--p", "1/2", "--p", "1/3",
            "--samples", "30", "--seed", "4",
        )
        self.assertEqual([e["measure"] for e in data["entries"]], ["rbp(p=1/2)", "rbp(p=1/3)"])
        self.assertEqual(data["entries"][0]["mode"], "sampled")
        self.assertEqual(data["entries"][0]["examined"], 30)

    def test_census_as_text(self):
        """It should print one line per measure"""
        result = self.invoke(
            "census", "--mode", "set", "--n", "2", "--measure", "precision", "--format", "text"
        )
        self.assertEqual(
            result.output,
            "precision over 6 exhaustive strict-total orders: ordinal 1, interval 1, not-ordinal 5\n",
        )

    ######################################################################
    #  R E P R O
    ######################################################################

    def test_repro_paper(self):
        """It should print PASS lines, byte-identical across runs"""
        args = ("repro-paper", "--only", "1", "--only", "2", "--only", "4")
        first = self.invoke(*args).output
        self.assertEqual(first, self.invoke(*args).output)
        self.assertTrue(first.startswith("PASS 1 "))
        self.assertTrue(first.endswith("3/3 criteria passed\n"))
        data = self.report(*args, "--format", "json")
        self.assertEqual(data["passed"], 3)

    def test_repro_paper_failure(self):
        """It should exit 1 when a criterion fails"""
        failing = {1: ("broken", lambda: (False, "did not hold"))}
        with patch.dict("scalekit.repro.CRITERIA", failing):
            result = self.invoke("repro-paper", "--only", "1", exit_code=status.EXIT_1_FAILED_CRITERIA)
        self.assertIn("FAIL 1 broken: did not hold", result.output)

    ######################################################################
    #  E R R O R S
    ######################################################################

    def test_cap_exceeded(self):
        """It should exit 3 when the universe is above the cap"""
        result = self.invoke(
            "universe", "--n", "5", "--max-elements", "4", exit_code=status.EXIT_3_CAP_EXCEEDED
        )
        self.assertIn("Cap Exceeded", result.output)

    def test_cap_from_app_config(self):
        """It should read caps from app.config"""
        with patch.dict(app.config, {"MAX_ELEMENTS": 3}):
            self.invoke("universe", "--n", "2", exit_code=status.EXIT_3_CAP_EXCEEDED)
        with patch.dict(app.config, {"MAX_ENUMERATED_ORDERS": 10}):
            self.invoke(
                "census", "--n", "2", "--measure", "precision", exit_code=status.EXIT_3_CAP_EXCEEDED
            )

    def test_config_errors(self):
        """It should exit 2 on configuration errors"""
        cases = [
            ("check", "--mode", "set", "--n", "2", "--measure", "ap", "--ordering", "sbto"),
            ("check", "--n", "2", "--measure", "precision", "--ordering", "nowhere.txt"),
            ("check", "--n", "2", "--measure", "precision"),
            ("check", "--n", "2", "--measure", "rbp", "--ordering", "rbto"),
            ("check", "--n", "2", "--measure", "precision", "--measure", "ap", "--ordering", "rbto"),
            ("check", "--n", "2", "--measure", "precision", "--ordering", "sbto"),
            ("census", "--n", "2", "--measure", "precision", "--samples", "5"),
            ("measure", "--n", "2", "--measure", "rbp", "--p", "abc"),
            ("measure", "--n", "2", "--measure", "ndcg"),
            ("check", "--n", "2", "--measure", "precision", "--ordering", "rbto", "--format", "csv"),
            ("universe", "--n", "0"),
        ]
        for args in cases:
            self.invoke(*args, exit_code=status.EXIT_2_CONFIG_ERROR)

    def test_error_payload(self):
        """It should write a JSON error payload on failure"""
        result = self.invoke(
            "measure", "--mode", "set", "--n", "2", "--measure", "dcg",
            exit_code=status.EXIT_2_CONFIG_ERROR,
        )
        payload = json.loads(result.output)
        validate(payload, self.schema)
        self.assertEqual(payload["error"], "Unsupported Measure")
        self.assertEqual(payload["status"], status.EXIT_2_CONFIG_ERROR)

    ######################################################################
    #  R U N   C O N F I G
    ######################################################################

    def test_run_config(self):
        """It should build specs and measures from a RunConfig"""
        run_config = RunConfig(
            "census", mode=Mode.SET, n=3, measures=(MeasureKind.PRECISION, MeasureKind.F_MEASURE)
        )
        self.assertEqual(run_config.universe_spec().recall_base, 3)
        self.assertEqual([c.name for c in run_config.measure_configs()], ["precision", "f-measure"])
        self.assertEqual(run_config.report_format, "json")
        self.assertEqual(RunConfig("repro-paper").report_format, "text")

    def test_unknown_subcommand(self):
        """It should refuse a subcommand it does not know"""
        with self.runner.isolation():
            self.assertEqual(run(RunConfig("plot")), status.EXIT_2_CONFIG_ERROR)
