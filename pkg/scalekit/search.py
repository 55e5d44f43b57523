"""
Search over the orderings of a small universe

Counts how many strict total orders or weak orders each measure is an
ordinal or an interval scale on, either exhaustively or on a seeded sample.
"""
import random
import logging
from enum import Enum
from math import comb, factorial
from itertools import permutations
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from scalekit import config
from scalekit.universe import Universe
from scalekit.measures import MeasureConfig, MeasureValues, evaluate_all
from scalekit.orderings import WeakOrder, order_from_measure
from scalekit.scalecheck import IntervalReport, IntervalVerdict, check_interval, classify_classes, tolerance
from scalekit.common.errors import CapExceededError, DataValidationError

logger = logging.getLogger("scalekit")

IndexClasses = Tuple[Tuple[int, ...], ...]


class OrderSpace(Enum):
    """Enumeration of searchable order spaces"""

    STRICT_TOTAL = "strict-total"
    WEAK = "weak"


@lru_cache(maxsize=None)
def fubini(m: int) -> int:
    """Number of weak orders (ordered set partitions) on m elements"""
    if m == 0:
        return 1
    return sum(comb(m, k) * fubini(m - k) for k in range(1, m + 1))


def count_orders(m: int, space: OrderSpace) -> int:
    """Size of an order space on m elements"""
    return factorial(m) if space is OrderSpace.STRICT_TOTAL else fubini(m)


######################################################################
#  E N U M E R A T I O N
######################################################################
def _ordered_partitions(items: Sequence[int]) -> Iterator[List[List[int]]]:
    """Every ordered set partition of items, by inserting the last item
    into each block or as a new block at each position"""
    if not items:
        yield []
        return
    rest, last = items[:-1], items[-1]
    for smaller in _ordered_partitions(rest):
        for i, block in enumerate(smaller):
            yield smaller[:i] + [block + [last]] + smaller[i + 1:]
        for i in range(len(smaller) + 1):
            yield smaller[:i] + [[last]] + smaller[i:]


def _check_cap(universe: Universe, space: OrderSpace, max_orders: Optional[int]):
    cap = config.MAX_ENUMERATED_ORDERS if max_orders is None else max_orders
    size = count_orders(len(universe), space)
    if size > cap:
        raise CapExceededError(f"{space.value} order space", size, cap)


def _strict_indices(m: int) -> Iterator[IndexClasses]:
    for permutation in permutations(range(m)):
        yield tuple((i,) for i in permutation)


def _weak_indices(m: int) -> Iterator[IndexClasses]:
    for partition in _ordered_partitions(list(range(m))):
        yield tuple(tuple(block) for block in partition)


def _as_orders(universe: Universe, space: OrderSpace, indices) -> Iterator[WeakOrder]:
    for number, index_classes in enumerate(indices):
        yield WeakOrder.from_indices(universe, index_classes, f"{space.value}#{number}", "enumerated")


def enumerate_strict_orders(universe: Universe, max_orders: Optional[int] = None) -> Iterator[WeakOrder]:
    """Every strict total order, lexicographic by permutation of enumeration indices

    :raises CapExceededError: when m! is above max_orders

    """
    _check_cap(universe, OrderSpace.STRICT_TOTAL, max_orders)
    return _as_orders(universe, OrderSpace.STRICT_TOTAL, _strict_indices(len(universe)))


def enumerate_weak_orders(universe: Universe, max_orders: Optional[int] = None) -> Iterator[WeakOrder]:
    """Every weak order (ordered set partition), in a fixed order

    :raises CapExceededError: when Fubini(m) is above max_orders

    """
    _check_cap(universe, OrderSpace.WEAK, max_orders)
    return _as_orders(universe, OrderSpace.WEAK, _weak_indices(len(universe)))


######################################################################
#  S A M P L I N G
######################################################################
def _random_strict(m: int, rng: random.Random) -> IndexClasses:
    permutation = list(range(m))
    rng.shuffle(permutation)
    return tuple((i,) for i in permutation)


def _random_weak(m: int, rng: random.Random) -> IndexClasses:
    """Uniform ordered set partition: the first block has k members with
    probability C(n, k) * Fubini(n - k) / Fubini(n)"""
    remaining = list(range(m))
    classes = []
    while remaining:
        n = len(remaining)
        pick = rng.randrange(fubini(n))
        for k in range(1, n + 1):
            weight = comb(n, k) * fubini(n - k)
            if pick < weight:
                break
            pick -= weight
        members = set(rng.sample(remaining, k))
        classes.append(tuple(sorted(members)))
        remaining = [i for i in remaining if i not in members]
    return tuple(classes)


def _sampled_indices(m: int, space: OrderSpace, seed: int, count: int) -> Iterator[IndexClasses]:
    rng = random.Random(seed)
    draw = _random_strict if space is OrderSpace.STRICT_TOTAL else _random_weak
    return (draw(m, rng) for _ in range(count))


def sample_orders(
    universe: Universe, space: OrderSpace, seed: int, count: int
) -> Iterator[WeakOrder]:
    """count orders drawn uniformly from an order space with a seeded generator"""
    return _as_orders(universe, space, _sampled_indices(len(universe), space, seed, count))


######################################################################
#  C E N S U S
######################################################################
@dataclass(frozen=True)
class SearchSpec:
    """
    Class that describes one census

    Exhaustive unless sample_count is set; sampling requires a seed.
    """

    universe: Universe
    configs: Tuple[MeasureConfig, ...]
    order_space: OrderSpace = OrderSpace.STRICT_TOTAL
    seed: Optional[int] = None
    sample_count: Optional[int] = None
    max_witnesses: Optional[int] = None
    max_orders: Optional[int] = None
    eps: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "configs", tuple(self.configs))
        if not self.configs:
            raise DataValidationError("A census needs at least one measure")
        if self.sample_count is not None:
            if self.seed is None:
                raise DataValidationError("A sampled census needs an explicit seed")
            if self.sample_count < 1:
                raise DataValidationError(f"Invalid sample count {self.sample_count}")
        if self.max_witnesses is None:
            object.__setattr__(self, "max_witnesses", config.MAX_WITNESSES)

    @property
    def mode(self) -> str:
        """exhaustive or sampled"""
        return "exhaustive" if self.sample_count is None else "sampled"

    def index_orders(self) -> Iterator[IndexClasses]:
        """The orders to examine, as classes of enumeration indices"""
        m = len(self.universe)
        if self.sample_count is not None:
            cap = config.MAX_ENUMERATED_ORDERS if self.max_orders is None else self.max_orders
            if self.sample_count > cap:
                raise CapExceededError("census sample", self.sample_count, cap)
            return _sampled_indices(m, self.order_space, self.seed, self.sample_count)
        _check_cap(self.universe, self.order_space, self.max_orders)
        if self.order_space is OrderSpace.STRICT_TOTAL:
            return _strict_indices(m)
        return _weak_indices(m)


@dataclass
class CensusEntry:
    """Verdict counts of one measure over the examined orders"""

    measure: str
    order_space: OrderSpace
    mode: str
    seed: Optional[int]
    examined: int = 0
    counts: Dict[IntervalVerdict, int] = field(
        default_factory=lambda: {verdict: 0 for verdict in IntervalVerdict}
    )
    witnesses: Dict[IntervalVerdict, List[str]] = field(
        default_factory=lambda: {verdict: [] for verdict in IntervalVerdict}
    )

    @property
    def interval_count(self) -> int:
        """Orders the measure is an interval scale on"""
        return self.counts[IntervalVerdict.INTERVAL]

    @property
    def ordinal_count(self) -> int:
        """Orders the measure is an ordinal scale on, interval ones included"""
        return self.interval_count + self.counts[IntervalVerdict.ORDINAL_NOT_INTERVAL]

    @property
    def not_ordinal_count(self) -> int:
        """Orders the measure does not represent"""
        return self.counts[IntervalVerdict.NOT_ORDINAL]

    def serialize(self) -> dict:
        """Serializes a CensusEntry into a dictionary"""
        return {
            "measure": self.measure,
            "order_space": self.order_space.value,
            "mode": self.mode,
            "seed": self.seed,
            "examined": self.examined,
            "ordinal_count": self.ordinal_count,
            "interval_count": self.interval_count,
            "not_ordinal_count": self.not_ordinal_count,
            "witnesses": {
                verdict.value: list(orders) for verdict, orders in self.witnesses.items()
            },
        }


@dataclass
class Census:
    """Census entries, one per measure of the spec"""

    universe: Universe
    entries: Tuple[CensusEntry, ...]

    def entry(self, measure: str) -> CensusEntry:
        """Finds the entry of one measure by name"""
        for entry in self.entries:
            if entry.measure == measure:
                return entry
        raise KeyError(measure)

    def serialize(self) -> dict:
        """Serializes a Census into a dictionary"""
        return {
            "report": "census",
            "universe": self.universe.spec.serialize(),
            "entries": [entry.serialize() for entry in self.entries],
        }


def census(spec: SearchSpec) -> Census:
    """Classifies every measure of spec on every examined order

    Each order gets the interval verdict of check_interval (computed over
    its tie-classes); the first max_witnesses orders of each verdict are
    kept in the ordering file format.

    :param spec: the universe, measures and order space to search
    :return: counts per verdict for every measure
    :rtype: Census

    """
    universe = spec.universe
    measured: List[MeasureValues] = [evaluate_all(cfg, universe) for cfg in spec.configs]
    tolerances = [tolerance(values, spec.eps) for values in measured]
    entries = tuple(
        CensusEntry(values.name, spec.order_space, spec.mode, spec.seed) for values in measured
    )
    logger.info(
        "Census of %s measures over %s %s orders of %r",
        len(measured), spec.mode, spec.order_space.value, universe,
    )

    for number, index_classes in enumerate(spec.index_orders()):
        rendered = None
        for values, tol, entry in zip(measured, tolerances, entries):
            verdict = classify_classes(index_classes, values.values, tol)
            entry.examined += 1
            entry.counts[verdict] += 1
            if len(entry.witnesses[verdict]) < spec.max_witnesses:
                if rendered is None:
                    rendered = WeakOrder.from_indices(
                        universe, index_classes, f"{spec.order_space.value}#{number}", "enumerated"
                    ).render()
                entry.witnesses[verdict].append(rendered)

    for entry in entries:
        logger.info(
            "%s: %s examined, %s ordinal, %s interval",
            entry.measure, entry.examined, entry.ordinal_count, entry.interval_count,
        )
    return Census(universe, entries)


def interval_on_induced_order(values: MeasureValues, eps: Optional[float] = None) -> IntervalReport:
    """Interval verdict of a measure on the order it induces itself

    It is the best verdict the measure can get on any weak order: it is an
    interval scale on some weak order iff its distinct sorted values are
    equispaced.
    """
    return check_interval(values, order_from_measure(values, eps), eps)
