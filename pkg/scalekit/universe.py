"""
Universes of assessed document lists

Elements
--------
Element - one assessed list of N graded documents, rank-based (a vector,
          rank 1 leftmost) or set-based (a multiset, kept sorted descending)

Universes
---------
UniverseSpec - list length N, top grade g_max, mode and recall base
Universe - every distinct Element for a spec, in canonical enumeration order

Text encoding: one character per grade, rank 1 leftmost ("010"); set-based
elements render in their canonical descending form ("10").
"""
import logging
from enum import Enum
from math import comb
from itertools import product, combinations_with_replacement
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, Optional, Tuple

from scalekit import config
from scalekit.common.errors import CapExceededError, DataValidationError

logger = logging.getLogger("scalekit")

# Grades are single characters in the text encoding
MAX_GRADE = 9


class Mode(Enum):
    """Enumeration of valid list modes"""

    RANK = "rank"
    SET = "set"


@dataclass(frozen=True, order=True)
class Element:
    """
    Class that represents one assessed list of documents

    Set-based elements compare structurally, so they must be canonicalized
    before being compared; Universe only ever holds canonical elements.
    """

    grades: Tuple[int, ...]
    mode: Mode = field(default=Mode.RANK, compare=False)

    def __post_init__(self):
        if not self.grades:
            raise DataValidationError("An element needs at least one grade")
        for grade in self.grades:
            if not isinstance(grade, int) or not 0 <= grade <= MAX_GRADE:
                raise DataValidationError(f"Invalid grade [{grade}] in {self.grades}")

    def __str__(self):
        return "".join(str(grade) for grade in self.grades)

    def __repr__(self):
        return f"<Element {self} mode=[{self.mode.value}]>"

    @property
    def n(self) -> int:
        """Length of the list"""
        return len(self.grades)

    @property
    def relevant_count(self) -> int:
        """Number of documents with a non-zero grade"""
        return sum(1 for grade in self.grades if grade > 0)

    @classmethod
    def parse(cls, text: str, mode: Mode = Mode.RANK) -> "Element":
        """Parses the text encoding of an element

        :param text: one digit per grade, rank 1 leftmost
        :param mode: set-based elements come back canonicalized

        """
        text = text.strip()
        if not text or not text.isdigit():
            raise DataValidationError(f"Invalid element text: '{text}'")
        return canonicalize(cls(tuple(int(char) for char in text), mode))


def canonicalize(element: Element) -> Element:
    """Returns the canonical form of an element

    The identity for rank-based elements; set-based grades are sorted
    descending so that equal multisets are equal elements.
    """
    if element.mode is Mode.RANK:
        return element
    return Element(tuple(sorted(element.grades, reverse=True)), Mode.SET)


@dataclass(frozen=True)
class UniverseSpec:
    """
    Class that describes a finite universe

    The recall base defaults to N, the largest relevant count an element
    of the universe can have.
    """

    n: int
    g_max: int = 1
    mode: Mode = Mode.RANK
    recall_base: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DataValidationError(f"N must be a positive integer, got {self.n}")
        if not isinstance(self.g_max, int) or not 1 <= self.g_max <= MAX_GRADE:
            raise DataValidationError(
                f"g_max must be an integer in [1, {MAX_GRADE}], got {self.g_max}"
            )
        if not isinstance(self.mode, Mode):
            raise DataValidationError(f"Invalid mode: {self.mode}")
        if self.recall_base is None:
            object.__setattr__(self, "recall_base", self.n)
        if not isinstance(self.recall_base, int) or self.recall_base < 1:
            raise DataValidationError(
                f"The recall base must be a positive integer, got {self.recall_base}"
            )
        if self.recall_base < self.n:
            raise DataValidationError(
                f"The recall base {self.recall_base} is below the largest "
                f"relevant count {self.n}"
            )

    @property
    def binary(self) -> bool:
        """True for binary relevance"""
        return self.g_max == 1

    @property
    def size(self) -> int:
        """Closed-form number of elements"""
        if self.mode is Mode.RANK:
            return (self.g_max + 1) ** self.n
        # multisets of size N over g_max + 1 grades
        return comb(self.n + self.g_max, self.g_max)

    def serialize(self) -> dict:
        """Serializes a UniverseSpec into a dictionary"""
        return {
            "n": self.n,
            "g_max": self.g_max,
            "mode": self.mode.value,
            "recall_base": self.recall_base,
        }

    @classmethod
    def deserialize(cls, data: dict) -> "UniverseSpec":
        """
        Deserializes a UniverseSpec from a dictionary
        Args:
            data (dict): A dictionary containing the UniverseSpec data
        """
        try:
            return cls(
                n=data["n"],
                g_max=data.get("g_max", 1),
                mode=Mode(data.get("mode", Mode.RANK.value)),
                recall_base=data.get("recall_base"),
            )
        except KeyError as error:
            raise DataValidationError("Invalid universe: missing " + error.args[0]) from error
        except ValueError as error:
            raise DataValidationError("Invalid universe: " + str(error)) from error


@dataclass(frozen=True, eq=False)
class Universe:
    """
    Class that represents the finite set of elements of one spec

    Elements are held in canonical enumeration order; the position of an
    element in that order is its index.
    """

    spec: UniverseSpec
    elements: Tuple[Element, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, element) -> bool:
        return element in self.positions

    def __eq__(self, other):
        if not isinstance(other, Universe):
            return NotImplemented
        return self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"<Universe n={self.spec.n} mode=[{self.spec.mode.value}] size=[{len(self)}]>"

    @cached_property
    def positions(self) -> Dict[Element, int]:
        """Maps every element to its enumeration index"""
        return {element: index for index, element in enumerate(self.elements)}

    def index(self, element: Element) -> int:
        """Returns the enumeration index of an element"""
        try:
            return self.positions[element]
        except KeyError as error:
            raise DataValidationError(f"Element {element} is not in {self!r}") from error

    def lookup(self, text: str) -> Element:
        """Finds an element from its text encoding

        :param text: the element text, e.g. "010"
        :return: the canonical element of this universe
        :rtype: Element

        """
        element = Element.parse(text, self.spec.mode)
        if element.n != self.spec.n or element not in self.positions:
            raise DataValidationError(f"Unknown element '{text.strip()}' for {self!r}")
        return element

    def serialize(self) -> dict:
        """Serializes a Universe into a dictionary"""
        return {
            "spec": self.spec.serialize(),
            "size": len(self),
            "elements": [str(element) for element in self.elements],
        }


def _set_sort_key(grades: Tuple[int, ...]):
    return (sum(1 for grade in grades if grade > 0), sum(grades), tuple(reversed(grades)))


def enumerate_universe(spec: UniverseSpec, max_elements: Optional[int] = None) -> Universe:
    """Builds every distinct element of a spec

    Rank-based elements come in lexicographic order of their grade strings;
    set-based ones by ascending relevant count, then grade sum, then
    lexicographic order of the canonical grades.

    :param spec: the universe to build
    :param max_elements: size cap, defaults to config.MAX_ELEMENTS

    """
    cap = config.MAX_ELEMENTS if max_elements is None else max_elements
    if spec.size > cap:
        raise CapExceededError("universe", spec.size, cap)

    logger.info("Enumerating %s universe N=%s g_max=%s", spec.mode.value, spec.n, spec.g_max)
    grades = range(spec.g_max + 1)
    if spec.mode is Mode.RANK:
        elements = tuple(Element(vector, Mode.RANK) for vector in product(grades, repeat=spec.n))
    else:
        multisets = sorted(combinations_with_replacement(grades, spec.n), key=_set_sort_key)
        elements = tuple(
            Element(tuple(reversed(multiset)), Mode.SET) for multiset in multisets
        )
    return Universe(spec, elements)
