"""
Scale checks for a measure on an ordering

A real mapping f is an ordinal scale on (X, <=) when x <= y iff
f(x) <= f(y) for all x, y. On a weak order it is an interval scale when it
is ordinal and equispaced over the tie-classes, i.e. an increasing affine
image of the class index. Difference structures are checked by brute force
over pairs of pairs.
"""
import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from scalekit import config
from scalekit.universe import Element
from scalekit.measures import MeasureValues, Value, format_value, real_context
from scalekit.orderings import OrderKind, Ordering, PartialOrder, WeakOrder
from scalekit.common.errors import (
    CapExceededError,
    DataValidationError,
    UniverseMismatchError,
)

logger = logging.getLogger("scalekit")


class OrdinalVerdict(Enum):
    """Enumeration of ordinal verdicts"""

    ORDINAL = "ordinal"
    NOT_ORDINAL = "not-ordinal"
    WEAKLY_REPRESENTS = "weakly-represents"


class IntervalVerdict(Enum):
    """Enumeration of interval verdicts"""

    INTERVAL = "interval"
    ORDINAL_NOT_INTERVAL = "ordinal-not-interval"
    NOT_ORDINAL = "not-ordinal"


# Checked in this order; the first failure is reported
DIFFERENCE_AXIOMS = (
    "completeness",
    "transitivity",
    "sign-reversal",
    "weak-monotonicity",
    "order-compatibility",
    "equal-spacing",
)
# Solvability and the Archimedean axiom hold trivially on finite step counts
VACUOUS_AXIOMS = ("solvability", "archimedean")


@dataclass(frozen=True)
class Witness:
    """Elements, their values and why they break a property"""

    elements: Tuple[Element, ...]
    values: Tuple[Value, ...] = ()
    reason: str = ""

    def serialize(self) -> dict:
        """Serializes a Witness into a dictionary"""
        return {
            "elements": [str(element) for element in self.elements],
            "values": [format_value(value) for value in self.values],
            "reason": self.reason,
        }


@dataclass(frozen=True)
class OrdinalReport:
    """Ordinal verdict of one measure on one ordering"""

    measure: str
    ordering: str
    provenance: str
    kind: OrderKind
    verdict: OrdinalVerdict
    witnesses: Tuple[Witness, ...] = ()
    incomparable_pairs: int = 0

    def serialize(self) -> dict:
        """Serializes an OrdinalReport into a dictionary"""
        return {
            "report": "ordinal",
            "measure": self.measure,
            "ordering": self.ordering,
            "provenance": self.provenance,
            "kind": self.kind.value,
            "verdict": self.verdict.value,
            "spacing": None,
            "affine": None,
            "incomparable_pairs": self.incomparable_pairs,
            "witnesses": [witness.serialize() for witness in self.witnesses],
        }


@dataclass(frozen=True)
class IntervalReport:
    """Interval verdict of one measure on one weak order"""

    measure: str
    ordering: str
    provenance: str
    kind: OrderKind
    verdict: IntervalVerdict
    spacing: Optional[Value] = None
    affine: Optional[Tuple[Value, Value]] = None
    witnesses: Tuple[Witness, ...] = ()

    @property
    def ordinal(self) -> bool:
        """True for interval and ordinal-not-interval verdicts"""
        return self.verdict is not IntervalVerdict.NOT_ORDINAL

    def serialize(self) -> dict:
        """Serializes an IntervalReport into a dictionary"""
        return {
            "report": "interval",
            "measure": self.measure,
            "ordering": self.ordering,
            "provenance": self.provenance,
            "kind": self.kind.value,
            "verdict": self.verdict.value,
            "spacing": None if self.spacing is None else format_value(self.spacing),
            "affine": None
            if self.affine is None
            else {"a": format_value(self.affine[0]), "b": format_value(self.affine[1])},
            "witnesses": [witness.serialize() for witness in self.witnesses],
        }


@dataclass(frozen=True)
class DiffStructureReport:
    """Outcome of the difference-structure axioms on one weak order"""

    ordering: str
    provenance: str
    kind: OrderKind
    verdict: bool
    failed_axiom: Optional[str] = None
    witness: Optional[Witness] = None

    def serialize(self) -> dict:
        """Serializes a DiffStructureReport into a dictionary"""
        return {
            "report": "diffstruct",
            "ordering": self.ordering,
            "provenance": self.provenance,
            "kind": self.kind.value,
            "verdict": self.verdict,
            "failed_axiom": self.failed_axiom,
            "witness": None if self.witness is None else self.witness.serialize(),
            "axioms_checked": list(DIFFERENCE_AXIOMS),
            "axioms_vacuous": list(VACUOUS_AXIOMS),
        }


@dataclass(frozen=True)
class NominalReport:
    """Whether a measure is one-to-one on its universe"""

    measure: str
    verdict: bool
    witnesses: Tuple[Witness, ...] = ()

    def serialize(self) -> dict:
        """Serializes a NominalReport into a dictionary"""
        return {
            "report": "nominal",
            "measure": self.measure,
            "verdict": self.verdict,
            "witnesses": [witness.serialize() for witness in self.witnesses],
        }


######################################################################
#  C O M P A R I S O N S
######################################################################
def tolerance(values: MeasureValues, eps: Optional[float] = None):
    """0 for exact values, eps (default DCG_EPSILON) otherwise"""
    if values.exact:
        return 0
    return config.DCG_EPSILON if eps is None else eps


def _equal(a, b, tol) -> bool:
    return a == b if tol == 0 else abs(a - b) <= tol


def _less(a, b, tol) -> bool:
    return a < b if tol == 0 else b - a > tol


def _check_universe(values: MeasureValues, order: Ordering):
    if values.universe != order.universe:
        raise UniverseMismatchError(
            f"{values.name} is defined on {values.universe!r}, "
            f"the ordering {order.name} on {order.universe!r}"
        )


def classify_classes(
    index_classes: Sequence[Sequence[int]], values: Sequence[Value], tol=0
) -> IntervalVerdict:
    """Interval verdict of values over tie-classes of enumeration indices

    Classes must hold equal values, class values must increase, and the
    increments must all be equal for an interval verdict. Under a tolerance
    every pair counts: a class spans at most tol, and the lowest value of a
    class exceeds the highest of the class before it by more than tol.
    """
    interval = True
    previous = previous_high = None
    gap = None
    for members in index_classes:
        class_values = [values[i] for i in members]
        first = class_values[0]
        low, high = min(class_values), max(class_values)
        if not _equal(low, high, tol):
            return IntervalVerdict.NOT_ORDINAL
        if previous is not None:
            if not _less(previous_high, low, tol):
                return IntervalVerdict.NOT_ORDINAL
            step = first - previous
            if gap is None:
                gap = step
            elif interval and not _equal(step, gap, tol):
                interval = False
        previous, previous_high = first, high
    return IntervalVerdict.INTERVAL if interval else IntervalVerdict.ORDINAL_NOT_INTERVAL


######################################################################
#  O R D I N A L
######################################################################
def _pair_witness(order: Ordering, x: Element, y: Element, fx, fy, tol) -> Optional[Witness]:
    """Witness when (x, y) breaks the representation, None otherwise"""
    if order.tied(x, y):
        if not _equal(fx, fy, tol):
            return Witness((x, y), (fx, fy), f"{x} and {y} are tied but f({x}) != f({y})")
    elif order.lt(x, y):
        if not _less(fx, fy, tol):
            return Witness((x, y), (fx, fy), f"{x} precedes {y} but f({x}) >= f({y})")
    elif order.lt(y, x):
        if not _less(fy, fx, tol):
            return Witness((x, y), (fx, fy), f"{y} precedes {x} but f({x}) <= f({y})")
    return None


def check_ordinal(
    values: MeasureValues,
    order: Ordering,
    eps: Optional[float] = None,
    max_witnesses: Optional[int] = None,
) -> OrdinalReport:
    """Checks x <= y iff f(x) <= f(y) over every pair

    Partial orders get the weak representation instead: x <= y implies
    f(x) <= f(y) and x < y implies f(x) < f(y). It is reported as
    weakly-represents when it holds and incomparable pairs exist.

    :param values: the measure f
    :param order: a WeakOrder or a PartialOrder on the same universe
    :return: the verdict, with witness pairs (lowest enumeration indices
        first) when it is not-ordinal
    :rtype: OrdinalReport

    """
    _check_universe(values, order)
    limit = config.MAX_WITNESSES if max_witnesses is None else max_witnesses
    tol = tolerance(values, eps)
    report = dict(
        measure=values.name, ordering=order.name, provenance=order.provenance, kind=order.kind
    )

    if isinstance(order, WeakOrder):
        verdict = classify_classes(order.index_classes, values.values, tol)
        if verdict is not IntervalVerdict.NOT_ORDINAL:
            return OrdinalReport(verdict=OrdinalVerdict.ORDINAL, **report)

    witnesses: List[Witness] = []
    incomparable = 0
    elements = values.universe.elements
    for i, x in enumerate(elements):
        for j in range(i + 1, len(elements)):
            y = elements[j]
            if isinstance(order, PartialOrder) and not order.comparable(x, y):
                incomparable += 1
                continue
            witness = _pair_witness(order, x, y, values.values[i], values.values[j], tol)
            if witness is not None:
                witnesses.append(witness)
                if len(witnesses) >= limit:
                    break
        if len(witnesses) >= limit:
            break

    if witnesses:
        verdict = OrdinalVerdict.NOT_ORDINAL
    elif incomparable:
        verdict = OrdinalVerdict.WEAKLY_REPRESENTS
    else:
        verdict = OrdinalVerdict.ORDINAL
    logger.info("%s on %s: %s", values.name, order.name, verdict.value)
    return OrdinalReport(
        verdict=verdict, witnesses=tuple(witnesses), incomparable_pairs=incomparable, **report
    )


def check_nominal(values: MeasureValues, eps: Optional[float] = None) -> NominalReport:
    """Checks that distinct elements get distinct values"""
    tol = tolerance(values, eps)
    elements = values.universe.elements
    for i, x in enumerate(elements):
        for j in range(i + 1, len(elements)):
            if _equal(values.values[i], values.values[j], tol):
                witness = Witness(
                    (x, elements[j]),
                    (values.values[i], values.values[j]),
                    f"f({x}) = f({elements[j]})",
                )
                return NominalReport(values.name, False, (witness,))
    return NominalReport(values.name, True)


######################################################################
#  I N T E R V A L
######################################################################
def canonical_interval_scale(order: Ordering) -> MeasureValues:
    """Maps every element to the 0-based index of its tie-class"""
    if not isinstance(order, WeakOrder):
        raise DataValidationError(
            f"No canonical interval scale for the partial order {order.name}"
        )
    values = tuple(Fraction(order.class_index[element]) for element in order.universe)
    return MeasureValues(order.universe, values, None, f"canonical({order.name})")


def affine_relate(
    f: MeasureValues, g: MeasureValues, eps: Optional[float] = None
) -> Optional[Tuple[Value, Value]]:
    """Finds (a, b) with f = a * g + b on every element

    :return: exact Fractions when both mappings are exact, gmpy2 values
        compared within eps otherwise; None when no such pair exists. When g
        is constant and f equals it up to a shift, a is taken as 1.

    """
    if f.universe != g.universe:
        raise UniverseMismatchError(f"{f.name} and {g.name} live on different universes")
    tol = 0 if f.exact and g.exact else (config.DCG_EPSILON if eps is None else eps)
    fv, gv = f.values, g.values
    with real_context():
        pivot = next((i for i in range(1, len(gv)) if not _equal(gv[i], gv[0], tol)), None)
        if pivot is None:
            a = Fraction(1)
        else:
            a = (fv[pivot] - fv[0]) / (gv[pivot] - gv[0])
        b = fv[0] - a * gv[0]
        for fx, gx in zip(fv, gv):
            if not _equal(fx, a * gx + b, tol):
                return None
    return a, b


def _gap_witnesses(values: MeasureValues, order: WeakOrder, tol, limit) -> Tuple[Witness, ...]:
    """Quadruples of class representatives whose gaps differ from the first"""
    representatives = [members[0] for members in order.classes]
    first = [values[e] for e in representatives]
    witnesses = []
    gap = first[1] - first[0]
    for k in range(1, len(representatives) - 1):
        step = first[k + 1] - first[k]
        if not _equal(step, gap, tol):
            x, y = representatives[0], representatives[1]
            z, w = representatives[k], representatives[k + 1]
            witnesses.append(
                Witness(
                    (x, y, z, w),
                    (first[0], first[1], first[k], first[k + 1]),
                    f"f({y}) - f({x}) != f({w}) - f({z})",
                )
            )
            if len(witnesses) >= limit:
                break
    return tuple(witnesses)


def check_interval(
    values: MeasureValues,
    order: Ordering,
    eps: Optional[float] = None,
    max_witnesses: Optional[int] = None,
) -> IntervalReport:
    """Checks that f is an increasing affine image of the class index

    :param values: the measure f
    :param order: a WeakOrder on the same universe
    :return: interval with spacing a when f = a * index + b with a > 0;
        ordinal-not-interval with unequal-gap quadruples; not-ordinal with
        the ordinal witness pairs
    :rtype: IntervalReport

    """
    if not isinstance(order, WeakOrder):
        raise DataValidationError(
            f"{order.name} is a partial order: interval scales are only checked on "
            "weak orders, use check_ordinal for the weak representation"
        )
    limit = config.MAX_WITNESSES if max_witnesses is None else max_witnesses
    ordinal = check_ordinal(values, order, eps, limit)
    report = dict(
        measure=values.name, ordering=order.name, provenance=order.provenance, kind=order.kind
    )
    if ordinal.verdict is not OrdinalVerdict.ORDINAL:
        return IntervalReport(
            verdict=IntervalVerdict.NOT_ORDINAL, witnesses=ordinal.witnesses, **report
        )

    coefficients = affine_relate(values, canonical_interval_scale(order), eps)
    if coefficients is not None and coefficients[0] > 0:
        spacing = coefficients[0] if len(order) > 1 else None
        return IntervalReport(
            verdict=IntervalVerdict.INTERVAL, spacing=spacing, affine=coefficients, **report
        )
    tol = tolerance(values, eps)
    return IntervalReport(
        verdict=IntervalVerdict.ORDINAL_NOT_INTERVAL,
        witnesses=_gap_witnesses(values, order, tol, limit),
        **report,
    )


######################################################################
#  D I F F E R E N C E   S T R U C T U R E
######################################################################
# An axiom failure: its name and the pair indices p = i * m + j involved
Failure = Tuple[str, Tuple[int, ...]]


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    """Lowest lexicographic index where mask is set"""
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def _compose(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Boolean matrix product"""
    return (left.astype(np.float32) @ right.astype(np.float32)) > 0


def _step_relation(rank: np.ndarray) -> np.ndarray:
    """(x, y) <=* (z, w) iff rank[y] - rank[x] <= rank[w] - rank[z], over pair indices"""
    steps = (rank[None, :] - rank[:, None]).reshape(-1)
    return steps[:, None] <= steps[None, :]


def _structural_failure(less_eq: np.ndarray, m: int) -> Optional[Failure]:
    """First failing axiom that does not refer to the ordering itself"""
    hit = _first(~(less_eq | less_eq.T))
    if hit:
        return "completeness", hit

    hit = _first(_compose(less_eq, less_eq) & ~less_eq)
    if hit:
        p, r = hit
        q = int(np.argmax(less_eq[p, :] & less_eq[:, r]))
        return "transitivity", (p, q, r)

    reverse = np.array([(p % m) * m + p // m for p in range(m * m)])
    hit = _first(less_eq & ~less_eq[np.ix_(reverse, reverse)].T)
    if hit:
        return "sign-reversal", hit

    # premise[(x, x'), (y, y')] = (x, y) <=* (x', y')
    premise = less_eq.reshape(m, m, m, m).transpose(0, 2, 1, 3).reshape(m * m, m * m)
    hit = _first(_compose(premise, premise) & ~premise)
    if hit:
        left, right = hit
        middle = int(np.argmax(premise[left, :] & premise[:, right]))
        return "weak-monotonicity", (left, middle, right)
    return None


@lru_cache(maxsize=256)
def _step_count_failure(sorted_rank: Tuple[int, ...]) -> Optional[Failure]:
    """Order-free axioms of the step-count relation

    They only depend on the multiset of class indices, so every order with
    the same class sizes shares one result, over elements sorted by class.
    """
    less_eq = _step_relation(np.array(sorted_rank, dtype=np.int64))
    return _structural_failure(less_eq, len(sorted_rank))


def _structural_report(axiom: str, pairs: Tuple[Tuple[Element, Element], ...]):
    """Witness elements and reason of an order-free axiom failure"""
    if axiom == "transitivity":
        (x, y), (z, w), (u, v) = pairs
        return (x, y, z, w, u, v), (
            f"({x},{y}) <=* ({z},{w}) <=* ({u},{v}) but not ({x},{y}) <=* ({u},{v})"
        )
    if axiom == "weak-monotonicity":
        (x, x2), (y, y2), (z, z2) = pairs
        return (x, y, z, x2, y2, z2), (
            f"({x},{y}) <=* ({x2},{y2}) and ({y},{z}) <=* ({y2},{z2}) "
            f"but not ({x},{z}) <=* ({x2},{z2})"
        )
    (x, y), (z, w) = pairs
    if axiom == "completeness":
        return (x, y, z, w), f"({x},{y}) and ({z},{w}) are not comparable"
    return (x, y, z, w), f"({x},{y}) <=* ({z},{w}) but not ({w},{z}) <=* ({y},{x})"


def check_difference_structure(
    order: Ordering,
    max_elements: Optional[int] = None,
    relation: Optional[Callable[[Element, Element, Element, Element], bool]] = None,
) -> DiffStructureReport:
    """Verifies the difference-structure axioms on a finite weak order

    The relation on intervals is the step count: (x, y) <=* (z, w) iff
    idx(y) - idx(x) <= idx(w) - idx(z) over class indices. A hand-built
    relation(x, y, z, w) can be injected in its place.

    :param order: a WeakOrder
    :param max_elements: universe cap, defaults to DIFFSTRUCT_MAX_ELEMENTS
    :return: the verdict, with the first failing axiom and its witness
    :rtype: DiffStructureReport

    """
    if not isinstance(order, WeakOrder):
        raise DataValidationError(f"{order.name} is a partial order: no step-count structure")
    cap = config.DIFFSTRUCT_MAX_ELEMENTS if max_elements is None else max_elements
    elements = order.universe.elements
    m = len(elements)
    if m > cap:
        raise CapExceededError("difference structure universe", m, cap)

    def pair(p: int) -> Tuple[Element, Element]:
        return elements[p // m], elements[p % m]

    def failed(axiom: str, members: Tuple[Element, ...], reason: str) -> DiffStructureReport:
        logger.info("Difference structure on %s fails %s", order.name, axiom)
        return DiffStructureReport(
            order.name, order.provenance, order.kind, False, axiom, Witness(members, (), reason)
        )

    rank = np.empty(m, dtype=np.int64)
    for position, members in enumerate(order.index_classes):
        rank[list(members)] = position

    if relation is None:
        steps = (rank[None, :] - rank[:, None]).reshape(-1)

        def related(p, q):
            return steps[p] <= steps[q]

        # by_class[c] is the element at position c once sorted by class
        by_class = np.argsort(rank, kind="stable")
        failure = _step_count_failure(tuple(int(r) for r in rank[by_class]))
        if failure:
            axiom, hits = failure
            hits = tuple(int(by_class[p // m] * m + by_class[p % m]) for p in hits)
            failure = axiom, hits
    else:
        less_eq = np.array(
            [[relation(*pair(p), *pair(q)) for q in range(m * m)] for p in range(m * m)],
            dtype=bool,
        )

        def related(p, q):
            return less_eq[p, q]

        failure = _structural_failure(less_eq, m)

    if failure:
        axiom, hits = failure
        members, reason = _structural_report(axiom, tuple(pair(p) for p in hits))
        return failed(axiom, members, reason)

    # (x, x) <=* (x, y) must agree with x <= y
    index = np.arange(m)
    null_first = related((index * m + index)[:, None], index[:, None] * m + index[None, :])
    disagree = null_first != (rank[:, None] <= rank[None, :])
    if disagree.any():
        hit = _first(disagree)
        x, y = elements[hit[0]], elements[hit[1]]
        return failed(
            "order-compatibility",
            (x, x, x, y),
            f"({x},{x}) <=* ({x},{y}) disagrees with {x} <= {y} in the ordering",
        )

    representatives = np.array([members[0] for members in order.index_classes], dtype=np.int64)
    if len(representatives) > 2:
        base = representatives[0] * m + representatives[1]
        adjacent = representatives[1:-1] * m + representatives[2:]
        equivalent = related(base, adjacent) & related(adjacent, base)
        if not equivalent.all():
            k = int(np.argmin(equivalent))
            x, y = elements[representatives[0]], elements[representatives[1]]
            z, w = elements[representatives[k + 1]], elements[representatives[k + 2]]
            return failed(
                "equal-spacing",
                (x, y, z, w),
                f"adjacent intervals ({x},{y}) and ({z},{w}) are not equivalent",
            )

    logger.info("Difference structure on %s holds", order.name)
    return DiffStructureReport(order.name, order.provenance, order.kind, True)
