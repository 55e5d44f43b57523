"""
Test cases for weak orders, partial orders and the ordering file format

Test cases can be run with:
    pytest
    coverage report -m
"""
import logging
import unittest
from fractions import Fraction

from scalekit.universe import Mode, UniverseSpec, enumerate_universe
from scalekit.measures import MeasureConfig, MeasureKind, evaluate_all
from scalekit.orderings import (
    BUILTIN_ORDERINGS,
    OrderKind,
    PartialOrder,
    WeakOrder,
    order_from_measure,
    paper_counterexample_order,
    parse_ordering,
    rbto,
    sbto,
    validate,
)
from scalekit.common.errors import DataValidationError, OrderingError

logging.disable(logging.CRITICAL)

DIAMOND = """partial
# 01 and 10 are left incomparable
00 < 01
00 < 10
01 < 11
10 < 11
"""


def strings(order: WeakOrder):
    """Tie-classes as lists of element strings"""
    return [[str(element) for element in members] for members in order.classes]


######################################################################
#  W E A K   O R D E R   T E S T   C A S E S
######################################################################
class TestWeakOrder(unittest.TestCase):
    """Test Cases for WeakOrder and the builtin orderings"""

    @classmethod
    def setUpClass(cls):
        """Build the small universes once"""
        cls.rank_2 = enumerate_universe(UniverseSpec(2))
        cls.set_2 = enumerate_universe(UniverseSpec(2, 1, Mode.SET))

    def test_sbto(self):
        """It should order set-based lists by relevant count"""
        order = sbto(enumerate_universe(UniverseSpec(3, 1, Mode.SET)))
        self.assertEqual(strings(order), [["000"], ["100"], ["110"], ["111"]])
        self.assertEqual(order.kind, OrderKind.STRICT_TOTAL)
        self.assertEqual(order.provenance, "reconstruction")

    def test_rbto(self):
        """It should order rank-based lists as binary fractions"""
        order = rbto(enumerate_universe(UniverseSpec(3)))
        self.assertEqual(
            [members[0] for members in strings(order)],
            ["000", "001", "010", "011", "100", "101", "110", "111"],
        )

    def test_rbto_is_induced_by_shallow_rbp(self):
        """It should match the order RBP induces for every p up to 1/2"""
        for n in range(1, 11):
            universe = enumerate_universe(UniverseSpec(n))
            expected = rbto(universe).classes
            for p in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)):
                values = evaluate_all(MeasureConfig(MeasureKind.RBP, p=p), universe)
                self.assertEqual(order_from_measure(values).classes, expected, f"N={n} p={p}")

    def test_builtins_check_their_universe(self):
        """It should refuse builtin orderings on the wrong universe"""
        self.assertRaises(DataValidationError, sbto, self.rank_2)
        self.assertRaises(DataValidationError, rbto, self.set_2)
        self.assertRaises(DataValidationError, rbto, enumerate_universe(UniverseSpec(2, 2)))
        self.assertRaises(DataValidationError, paper_counterexample_order, self.rank_2)
        self.assertEqual(sorted(BUILTIN_ORDERINGS), ["paper-counterexample", "rbto", "sbto"])

    def test_counterexample_order(self):
        """It should put {0,1} below {0,0} below {1,1}"""
        order = paper_counterexample_order()
        self.assertEqual(order.render(), "10\n00\n11\n")
        self.assertEqual(order.provenance, "paper")
        low, high = order.universe.lookup("10"), order.universe.lookup("00")
        self.assertTrue(order.lt(low, high))
        self.assertTrue(order.le(low, high))
        self.assertFalse(order.le(high, low))

    def test_invalid_partitions(self):
        """It should refuse missing, duplicated and empty classes"""
        e00, e10, e11 = self.set_2.elements
        self.assertRaises(OrderingError, WeakOrder, self.set_2, ((e00,), (e10,)))
        self.assertRaises(OrderingError, WeakOrder, self.set_2, ((e00, e10), (e10, e11)))
        self.assertRaises(OrderingError, WeakOrder, self.set_2, ((e00,), (), (e10, e11)))
        stray = (self.rank_2.elements[1],)
        self.assertRaises(OrderingError, WeakOrder, self.set_2, ((e00,), (e10,), (e11,), stray))

    def test_class_members_are_normalized(self):
        """It should keep class members in enumeration order"""
        e00, e01, e10, e11 = self.rank_2.elements
        order = WeakOrder(self.rank_2, ((e00,), (e10, e01), (e11,)))
        self.assertEqual(strings(order), [["00"], ["01", "10"], ["11"]])
        self.assertEqual(order, WeakOrder(self.rank_2, ((e00,), (e01, e10), (e11,))))
        self.assertTrue(order.tied(e01, e10))
        self.assertEqual(order.kind, OrderKind.WEAK)
        self.assertEqual(order.index_classes, ((0,), (1, 2), (3,)))

    def test_order_from_measure(self):
        """It should group equal values into ascending classes"""
        values = evaluate_all(MeasureConfig(MeasureKind.PRECISION), self.rank_2)
        order = order_from_measure(values)
        self.assertEqual(strings(order), [["00"], ["01", "10"], ["11"]])
        self.assertEqual(order.name, "induced(precision)")
        self.assertEqual(order.provenance, "measure-induced")

    def test_order_from_dcg(self):
        """It should compare DCG values within a tolerance"""
        values = evaluate_all(MeasureConfig(MeasureKind.DCG), self.rank_2)
        self.assertEqual(order_from_measure(values).kind, OrderKind.STRICT_TOTAL)
        self.assertEqual(len(order_from_measure(values, eps=0.5)), 3)

    def test_serialize_a_weak_order(self):
        """It should serialize the classes as element strings"""
        data = sbto(self.set_2).serialize()
        self.assertEqual(data["classes"], [["00"], ["10"], ["11"]])
        self.assertEqual(data["kind"], "strict-total")


######################################################################
#  P A R T I A L   O R D E R   T E S T   C A S E S
######################################################################
class TestPartialOrder(unittest.TestCase):
    """Test Cases for PartialOrder"""

    @classmethod
    def setUpClass(cls):
        """Build the small universe once"""
        cls.universe = enumerate_universe(UniverseSpec(2))

    def test_diamond(self):
        """It should close declared pairs transitively"""
        order = parse_ordering(DIAMOND, self.universe, "diamond")
        e00, e01, e10, e11 = self.universe.elements
        self.assertIsInstance(order, PartialOrder)
        self.assertEqual(order.kind, OrderKind.PARTIAL)
        self.assertTrue(order.lt(e00, e11))
        self.assertFalse(order.comparable(e01, e10))
        self.assertEqual(order.incomparable_pairs(), [(e01, e10)])
        self.assertEqual(order.provenance, "file")

    def test_ties(self):
        """It should treat declared equalities as ties"""
        order = parse_ordering("partial\n00 < 01\n01 = 10\n10 < 11\n", self.universe)
        e00, e01, e10, e11 = self.universe.elements
        self.assertTrue(order.tied(e01, e10))
        self.assertTrue(order.lt(e00, e10))
        self.assertTrue(order.lt(e01, e11))
        self.assertEqual(order.incomparable_pairs(), [])

    def test_cycles(self):
        """It should refuse strict cycles"""
        self.assertRaises(OrderingError, parse_ordering, "partial\n00 < 01\n01 < 00\n", self.universe)
        self.assertRaises(
            OrderingError, parse_ordering, "partial\n00 < 01\n01 < 10\n10 < 00\n", self.universe
        )
        self.assertRaises(OrderingError, parse_ordering, "partial\n00 < 00\n", self.universe)
        self.assertRaises(OrderingError, parse_ordering, "partial\n00 = 01\n00 < 01\n", self.universe)

    def test_render_round_trip(self):
        """It should render covering pairs that parse back to the same order"""
        order = parse_ordering(DIAMOND, self.universe)
        self.assertEqual(order.render(), "partial\n00 < 01\n00 < 10\n01 < 11\n10 < 11\n")
        self.assertEqual(parse_ordering(order.render(), self.universe), order)
        tied = parse_ordering("partial\n11 = 10\n00 < 10\n01 < 10\n", self.universe)
        self.assertEqual(parse_ordering(tied.render(), self.universe), tied)

    def test_serialize_a_partial_order(self):
        """It should serialize every non-reflexive pair"""
        data = parse_ordering(DIAMOND, self.universe).serialize()
        self.assertEqual(data["kind"], "partial")
        self.assertIn(["00", "11"], data["pairs"])
        self.assertEqual(len(data["pairs"]), 5)


######################################################################
#  P A R S E   A N D   V A L I D A T E   T E S T   C A S E S
######################################################################
class TestParseOrdering(unittest.TestCase):
    """Test Cases for the ordering file format and validate()"""

    @classmethod
    def setUpClass(cls):
        """Build the small universe once"""
        cls.universe = enumerate_universe(UniverseSpec(2))

    def test_parse_a_weak_order(self):
        """It should parse one class per line and skip comments"""
        order = parse_ordering("# ties\n00\n\n01, 10  # both one relevant\n11\n", self.universe, "ties")
        self.assertEqual(strings(order), [["00"], ["01", "10"], ["11"]])
        self.assertEqual(order.name, "ties")

    def test_round_trip(self):
        """It should parse a rendered weak order back to itself"""
        order = rbto(self.universe)
        self.assertEqual(parse_ordering(order.render(), self.universe), order)

    def test_parse_errors(self):
        """It should refuse empty files, unknown and duplicate elements"""
        self.assertRaises(OrderingError, parse_ordering, "# nothing\n", self.universe)
        self.assertRaises(OrderingError, parse_ordering, "00\n01\n10\n111\n", self.universe)
        self.assertRaises(OrderingError, parse_ordering, "00\n01,00\n10\n11\n", self.universe)
        self.assertRaises(OrderingError, parse_ordering, "00\n01\n10\n", self.universe)
        self.assertRaises(OrderingError, parse_ordering, "partial\n00 << 01\n", self.universe)

    def test_validate(self):
        """It should list every violation of raw classes"""
        self.assertEqual(validate([["00"], ["01", "10"], ["11"]], self.universe), [])
        problems = validate([["00"], ["01", "01"], ["2"]], self.universe)
        self.assertEqual(len(problems), 4)
        self.assertEqual(validate(rbto(self.universe), self.universe), [])
        other = enumerate_universe(UniverseSpec(2, 1, Mode.SET))
        self.assertEqual(len(validate(sbto(other), self.universe)), 2)
        diamond = parse_ordering(DIAMOND, self.universe)
        self.assertEqual(validate(diamond, self.universe), [])
