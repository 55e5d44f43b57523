"""
Orderings on a universe

Models
------
WeakOrder - an ordered partition of the universe into tie-classes; the
            earlier class precedes the later one (strict total orders are
            weak orders with singleton classes)
PartialOrder - a reflexive, transitively closed relation; mutual pairs
               are ties

Ordering file format
--------------------
Weak orders: one line per tie-class in ascending order, elements comma
separated, e.g. "01" / "00" / "11". Partial orders: a "partial" header,
then one "A < B" or "A = B" per line. Blank lines and "#" comments are
ignored.
"""
import re
import logging
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from scalekit import config
from scalekit.universe import Element, Mode, Universe, UniverseSpec, enumerate_universe
from scalekit.measures import MeasureValues
from scalekit.common.errors import DataValidationError, OrderingError

logger = logging.getLogger("scalekit")

PARTIAL_HEADER = "partial"
PAIR_LINE = re.compile(r"^(\S+)\s*(<|=)\s*(\S+)$")


class OrderKind(Enum):
    """Enumeration of ordering kinds"""

    STRICT_TOTAL = "strict-total"
    WEAK = "weak"
    PARTIAL = "partial"


def _partition_violations(classes: Sequence[Sequence[Element]], universe: Universe) -> List[str]:
    """Lists every way classes fail to be an ordered partition of universe"""
    violations = []
    seen = set()
    for position, members in enumerate(classes):
        if not members:
            violations.append(f"class {position} is empty")
        for element in members:
            if element not in universe:
                violations.append(f"element {element} is not in {universe!r}")
            elif element in seen:
                violations.append(f"element {element} appears more than once")
            seen.add(element)
    missing = [str(element) for element in universe if element not in seen]
    if missing:
        violations.append(f"elements missing from the ordering: {', '.join(missing)}")
    return violations


######################################################################
#  W E A K   O R D E R
######################################################################
@dataclass(frozen=True, eq=False)
class WeakOrder:
    """
    Class that represents a total order with ties on a universe

    classes hold the tie-classes in ascending order; members of a class are
    kept in enumeration order.
    """

    universe: Universe
    classes: Tuple[Tuple[Element, ...], ...]
    name: str = "custom"
    provenance: str = "custom"

    def __post_init__(self):
        classes = tuple(tuple(members) for members in self.classes)
        violations = _partition_violations(classes, self.universe)
        if violations:
            raise OrderingError(f"Invalid weak order '{self.name}': {violations[0]}")
        index = self.universe.positions
        object.__setattr__(
            self,
            "classes",
            tuple(tuple(sorted(members, key=index.__getitem__)) for members in classes),
        )

    def __len__(self):
        return len(self.classes)

    def __eq__(self, other):
        if not isinstance(other, WeakOrder):
            return NotImplemented
        return self.universe == other.universe and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __repr__(self):
        return f"<WeakOrder {self.name} classes=[{len(self)}] kind=[{self.kind.value}]>"

    @property
    def kind(self) -> OrderKind:
        """strict-total when every class is a singleton"""
        if all(len(members) == 1 for members in self.classes):
            return OrderKind.STRICT_TOTAL
        return OrderKind.WEAK

    @cached_property
    def class_index(self) -> Dict[Element, int]:
        """Maps every element to the position of its class"""
        return {
            element: position
            for position, members in enumerate(self.classes)
            for element in members
        }

    @cached_property
    def index_classes(self) -> Tuple[Tuple[int, ...], ...]:
        """The classes as enumeration indices"""
        index = self.universe.positions
        return tuple(tuple(index[element] for element in members) for members in self.classes)

    def le(self, x: Element, y: Element) -> bool:
        """x precedes or is tied with y"""
        return self.class_index[x] <= self.class_index[y]

    def lt(self, x: Element, y: Element) -> bool:
        """x strictly precedes y"""
        return self.class_index[x] < self.class_index[y]

    def tied(self, x: Element, y: Element) -> bool:
        """x and y share a class"""
        return self.class_index[x] == self.class_index[y]

    def render(self) -> str:
        """Renders the ordering file format"""
        return "".join(",".join(str(e) for e in members) + "\n" for members in self.classes)

    def serialize(self) -> dict:
        """Serializes a WeakOrder into a dictionary"""
        return {
            "name": self.name,
            "kind": self.kind.value,
            "provenance": self.provenance,
            "classes": [[str(element) for element in members] for members in self.classes],
        }

    @classmethod
    def from_indices(cls, universe: Universe, index_classes, name="custom", provenance="custom"):
        """Builds a weak order from classes of enumeration indices"""
        elements = universe.elements
        return cls(
            universe,
            tuple(tuple(elements[i] for i in members) for members in index_classes),
            name,
            provenance,
        )


######################################################################
#  P A R T I A L   O R D E R
######################################################################
@dataclass(frozen=True, eq=False)
class PartialOrder:
    """
    Class that represents a partial order (with ties) on a universe

    relation is reflexive and transitively closed: (x, y) in relation
    means x precedes or is tied with y.
    """

    universe: Universe
    relation: FrozenSet[Tuple[Element, Element]]
    name: str = "custom"
    provenance: str = "custom"

    def __post_init__(self):
        violations = _relation_violations(self.relation, self.universe)
        if violations:
            raise OrderingError(f"Invalid partial order '{self.name}': {violations[0]}")

    def __eq__(self, other):
        if not isinstance(other, PartialOrder):
            return NotImplemented
        return self.universe == other.universe and self.relation == other.relation

    def __hash__(self):
        return hash(self.relation)

    def __repr__(self):
        return f"<PartialOrder {self.name} pairs=[{len(self.relation)}]>"

    @property
    def kind(self) -> OrderKind:
        """Always partial"""
        return OrderKind.PARTIAL

    def le(self, x: Element, y: Element) -> bool:
        """x precedes or is tied with y"""
        return (x, y) in self.relation

    def lt(self, x: Element, y: Element) -> bool:
        """x strictly precedes y"""
        return (x, y) in self.relation and (y, x) not in self.relation

    def tied(self, x: Element, y: Element) -> bool:
        """x and y are declared equivalent"""
        return (x, y) in self.relation and (y, x) in self.relation

    def comparable(self, x: Element, y: Element) -> bool:
        """x and y are related one way or the other"""
        return (x, y) in self.relation or (y, x) in self.relation

    def incomparable_pairs(self) -> List[Tuple[Element, Element]]:
        """Every incomparable pair (x, y), x before y in enumeration order"""
        elements = self.universe.elements
        return [
            (x, y)
            for i, x in enumerate(elements)
            for y in elements[i + 1:]
            if not self.comparable(x, y)
        ]

    def graph(self) -> nx.DiGraph:
        """The relation as a directed graph, self loops left out"""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.universe.elements)
        graph.add_edges_from((x, y) for x, y in self.relation if x != y)
        return graph

    def render(self) -> str:
        """Renders the ordering file format

        Ties are written against the first member of their class and strict
        pairs as the covering pairs between class representatives.
        """
        index = self.universe.positions
        condensed = nx.condensation(self.graph())
        representative = {}
        lines = [PARTIAL_HEADER]
        for node, data in sorted(
            condensed.nodes(data=True), key=lambda item: min(index[e] for e in item[1]["members"])
        ):
            members = sorted(data["members"], key=index.__getitem__)
            representative[node] = members[0]
            lines.extend(f"{members[0]} = {other}" for other in members[1:])
        covering = nx.transitive_reduction(condensed)
        pairs = sorted(
            ((representative[a], representative[b]) for a, b in covering.edges()),
            key=lambda pair: (index[pair[0]], index[pair[1]]),
        )
        lines.extend(f"{x} < {y}" for x, y in pairs)
        return "\n".join(lines) + "\n"

    def serialize(self) -> dict:
        """Serializes a PartialOrder into a dictionary"""
        index = self.universe.positions
        pairs = sorted(
            ((x, y) for x, y in self.relation if x != y),
            key=lambda pair: (index[pair[0]], index[pair[1]]),
        )
        return {
            "name": self.name,
            "kind": self.kind.value,
            "provenance": self.provenance,
            "pairs": [[str(x), str(y)] for x, y in pairs],
        }

    @classmethod
    def build(
        cls,
        universe: Universe,
        strict_pairs: Iterable[Tuple[Element, Element]] = (),
        tie_pairs: Iterable[Tuple[Element, Element]] = (),
        name: str = "custom",
        provenance: str = "custom",
    ) -> "PartialOrder":
        """Closes declared pairs into a partial order

        :param strict_pairs: pairs (x, y) declaring x strictly before y
        :param tie_pairs: pairs (x, y) declaring x tied with y
        :raises OrderingError: when the declared pairs contain a cycle that
            is not made of declared ties

        """
        strict_pairs = list(strict_pairs)
        tie_pairs = list(tie_pairs)
        for pair in strict_pairs + tie_pairs:
            for element in pair:
                if element not in universe:
                    raise OrderingError(f"element {element} is not in {universe!r}")
        for x, y in strict_pairs:
            if x == y:
                raise OrderingError(f"cycle detected: {x} is declared below itself")

        ties = nx.Graph()
        ties.add_nodes_from(universe.elements)
        ties.add_edges_from(tie_pairs)
        tie_class = {}
        for component in nx.connected_components(ties):
            for element in component:
                tie_class[element] = frozenset(component)
        for x, y in strict_pairs:
            if y in tie_class[x]:
                raise OrderingError(f"cycle detected: {x} < {y} but they are declared tied")

        graph = nx.DiGraph()
        graph.add_nodes_from(universe.elements)
        graph.add_edges_from(strict_pairs)
        graph.add_edges_from(tie_pairs)
        graph.add_edges_from((y, x) for x, y in tie_pairs)
        for component in nx.strongly_connected_components(graph):
            if len(component) > 1 and not component <= tie_class[next(iter(component))]:
                names = ", ".join(sorted(str(element) for element in component))
                raise OrderingError(f"cycle detected among {names}")

        closure = nx.transitive_closure(graph, reflexive=True)
        logger.debug("Closed %s declared pairs into %s", len(strict_pairs), closure.size())
        return cls(universe, frozenset(closure.edges()), name, provenance)


Ordering = Union[WeakOrder, PartialOrder]


def _relation_violations(relation, universe: Universe) -> List[str]:
    """Lists reflexivity and transitivity failures of a relation"""
    violations = []
    for x, y in relation:
        for element in (x, y):
            if element not in universe:
                violations.append(f"element {element} is not in {universe!r}")
    if violations:
        return violations
    for element in universe:
        if (element, element) not in relation:
            violations.append(f"relation is not reflexive at {element}")
    successors: Dict[Element, set] = {element: set() for element in universe}
    for x, y in relation:
        successors[x].add(y)
    for x, y in sorted(relation, key=lambda pair: (str(pair[0]), str(pair[1]))):
        for z in successors[y]:
            if z not in successors[x]:
                violations.append(f"relation is not transitive: {x} <= {y} <= {z}")
                break
    return violations


def validate(order, universe: Universe) -> List[str]:
    """Confirms an ordering is well formed on a universe

    :param order: a WeakOrder, a PartialOrder, or raw tie-classes (a list
        of lists of elements or element strings)
    :return: every violation found; empty when the ordering is valid

    """
    if isinstance(order, WeakOrder):
        diagnostics = []
        if order.universe != universe:
            diagnostics.append(f"ordering is over {order.universe!r}, expected {universe!r}")
        return diagnostics + _partition_violations(order.classes, universe)
    if isinstance(order, PartialOrder):
        diagnostics = []
        if order.universe != universe:
            diagnostics.append(f"ordering is over {order.universe!r}, expected {universe!r}")
        return diagnostics + _relation_violations(order.relation, universe)

    classes = []
    diagnostics = []
    for members in order:
        resolved = []
        for member in members:
            if isinstance(member, Element):
                resolved.append(member)
                continue
            try:
                resolved.append(universe.lookup(member))
            except DataValidationError as error:
                diagnostics.append(str(error))
        classes.append(resolved)
    return diagnostics + _partition_violations(classes, universe)


######################################################################
#  C O N S T R U C T I O N
######################################################################
def order_from_measure(values: MeasureValues, eps: Optional[float] = None) -> WeakOrder:
    """Groups the universe by equal value, in ascending order of value

    Exact values tie only when equal; DCG values tie within eps.
    """
    if values.exact:
        tolerance = 0
    else:
        tolerance = config.DCG_EPSILON if eps is None else eps
    ranked = sorted(range(len(values)), key=lambda i: (values.values[i], i))
    classes: List[List[int]] = []
    previous = None
    for i in ranked:
        value = values.values[i]
        if previous is None or value - previous > tolerance:
            classes.append([i])
        else:
            classes[-1].append(i)
        previous = value
    return WeakOrder.from_indices(
        values.universe, classes, f"induced({values.name})", "measure-induced"
    )


def _require(universe: Universe, mode: Mode, name: str):
    if universe.spec.mode is not mode or not universe.spec.binary:
        raise DataValidationError(
            f"{name} is defined on {mode.value}-based binary universes, got {universe!r}"
        )


def sbto(universe: Universe) -> WeakOrder:
    """Set-based total order: ascending relevant count"""
    _require(universe, Mode.SET, "sbto")
    by_count: Dict[int, List[Element]] = {}
    for element in universe:
        by_count.setdefault(element.relevant_count, []).append(element)
    classes = tuple(tuple(by_count[count]) for count in sorted(by_count))
    return WeakOrder(universe, classes, "sbto", "reconstruction")


def rbto(universe: Universe) -> WeakOrder:
    """Rank-based total order: ascending sum of r_i * 2^-i"""
    _require(universe, Mode.RANK, "rbto")

    def binary_fraction(element: Element) -> Fraction:
        return sum(
            (Fraction(grade, 2**rank) for rank, grade in enumerate(element.grades, start=1)),
            Fraction(0),
        )

    ranked = sorted(universe, key=binary_fraction)
    return WeakOrder(universe, tuple((element,) for element in ranked), "rbto", "reconstruction")


def paper_counterexample_order(universe: Optional[Universe] = None) -> WeakOrder:
    """The total order {0, 1} < {0, 0} < {1, 1} on set-based lists of two"""
    if universe is None:
        universe = enumerate_universe(UniverseSpec(2, 1, Mode.SET))
    spec = universe.spec
    if spec.mode is not Mode.SET or spec.n != 2 or not spec.binary:
        raise DataValidationError(
            f"The counterexample order is over set-based binary lists of two, got {universe!r}"
        )
    classes = tuple((universe.lookup(text),) for text in ("01", "00", "11"))
    return WeakOrder(universe, classes, "paper-counterexample", "paper")


BUILTIN_ORDERINGS = {
    "sbto": sbto,
    "rbto": rbto,
    "paper-counterexample": paper_counterexample_order,
}


######################################################################
#  P A R S I N G
######################################################################
def _lookup(universe: Universe, text: str, line_number: int) -> Element:
    try:
        return universe.lookup(text)
    except DataValidationError as error:
        raise OrderingError(f"line {line_number}: {error}") from error


def parse_ordering(text: str, universe: Universe, name: str = "file") -> Ordering:
    """Parses the ordering file format

    :param text: the file contents
    :param universe: the universe the elements belong to
    :return: a WeakOrder, or a transitively closed PartialOrder
    :raises OrderingError: unknown or duplicate element, cycle, non-partition

    """
    lines = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((line_number, line))
    if not lines:
        raise OrderingError("The ordering is empty")

    if lines[0][1].lower() == PARTIAL_HEADER:
        strict_pairs, tie_pairs = [], []
        for line_number, line in lines[1:]:
            match = PAIR_LINE.match(line)
            if not match:
                raise OrderingError(f"line {line_number}: expected 'A < B' or 'A = B'")
            left = _lookup(universe, match.group(1), line_number)
            right = _lookup(universe, match.group(3), line_number)
            if match.group(2) == "<":
                strict_pairs.append((left, right))
            else:
                tie_pairs.append((left, right))
        return PartialOrder.build(universe, strict_pairs, tie_pairs, name, "file")

    classes = []
    seen = set()
    for line_number, line in lines:
        members = []
        for item in line.split(","):
            element = _lookup(universe, item, line_number)
            if element in seen:
                raise OrderingError(f"line {line_number}: duplicate element {element}")
            seen.add(element)
            members.append(element)
        classes.append(tuple(members))
    return WeakOrder(universe, tuple(classes), name, "file")
