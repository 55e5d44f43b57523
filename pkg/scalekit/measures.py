"""
IR evaluation measures over a universe

All of the measures are mappings from an Element to a value. Precision,
Recall, F-measure, AP, ERR and RBP are computed exactly with Fraction;
DCG needs logarithms and is computed with gmpy2 at DCG_PRECISION_BITS.

Measures
--------
precision, recall, f_measure - set-based or rank-based, binary relevance
average_precision - rank-based, binary relevance
dcg, err, rbp - rank-based, binary or graded relevance
"""
import csv
import logging
from enum import Enum
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Optional, Tuple, Union

import gmpy2

from scalekit import config
from scalekit.universe import Element, Mode, Universe, UniverseSpec
from scalekit.common.errors import DataValidationError, UnsupportedMeasureError

logger = logging.getLogger("scalekit")

Value = Union[Fraction, "gmpy2.mpfr"]


class MeasureKind(Enum):
    """Enumeration of the implemented measures"""

    PRECISION = "precision"
    RECALL = "recall"
    F_MEASURE = "f-measure"
    AP = "ap"
    DCG = "dcg"
    ERR = "err"
    RBP = "rbp"


class Gain(Enum):
    """Enumeration of DCG gain functions"""

    LINEAR = "linear"
    EXPONENTIAL = "exponential"


SET_BASED_KINDS = frozenset({MeasureKind.PRECISION, MeasureKind.RECALL, MeasureKind.F_MEASURE})
BINARY_KINDS = SET_BASED_KINDS | {MeasureKind.AP}


def parse_rational(text) -> Fraction:
    """Parses "num/den", an integer or a decimal into an exact Fraction"""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        raise DataValidationError(f"Use an exact 'num/den' string instead of the float {text}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as error:
        raise DataValidationError(f"Invalid rational '{text}': {error}") from error


def real_context():
    """Returns the gmpy2 context DCG values are computed and compared in"""
    return gmpy2.context(precision=config.DCG_PRECISION_BITS)


@dataclass(frozen=True)
class MeasureConfig:
    """
    Class that describes one measure configuration

    p is the RBP persistence, beta the F-measure weight, discount_base and
    gain configure DCG. Parameters that do not apply to the kind are ignored.
    """

    kind: MeasureKind
    p: Optional[Fraction] = None
    beta: Fraction = Fraction(1)
    discount_base: int = 2
    gain: Gain = Gain.LINEAR

    def __post_init__(self):
        if not isinstance(self.kind, MeasureKind):
            raise DataValidationError(f"Invalid measure kind: {self.kind}")
        object.__setattr__(self, "beta", parse_rational(self.beta))
        if self.beta <= 0:
            raise DataValidationError(f"beta must be positive, got {self.beta}")
        if not isinstance(self.discount_base, int) or self.discount_base < 2:
            raise DataValidationError(
                f"The DCG discount base must be an integer >= 2, got {self.discount_base}"
            )
        if self.kind is MeasureKind.RBP:
            if self.p is None:
                raise DataValidationError("RBP needs a persistence p")
            object.__setattr__(self, "p", parse_rational(self.p))
            if not 0 < self.p < 1:
                raise DataValidationError(f"RBP needs 0 < p < 1, got {self.p}")

    def __str__(self):
        return self.name

    @property
    def name(self) -> str:
        """Label used in reports"""
        if self.kind is MeasureKind.RBP:
            return f"rbp(p={self.p})"
        if self.kind is MeasureKind.F_MEASURE and self.beta != 1:
            return f"f-measure(beta={self.beta})"
        if self.kind is MeasureKind.DCG and (
            self.discount_base != 2 or self.gain is not Gain.LINEAR
        ):
            return f"dcg(base={self.discount_base},gain={self.gain.value})"
        return self.kind.value

    @property
    def exact(self) -> bool:
        """True when values are exact rationals"""
        return self.kind is not MeasureKind.DCG

    def check_universe(self, spec: UniverseSpec):
        """Raises UnsupportedMeasureError when the measure is undefined on spec"""
        if spec.mode is Mode.SET and self.kind not in SET_BASED_KINDS:
            raise UnsupportedMeasureError(
                f"{self.name} is rank-based and undefined on set-based lists"
            )
        if self.kind in BINARY_KINDS and not spec.binary:
            raise UnsupportedMeasureError(
                f"{self.name} needs binary relevance, got g_max={spec.g_max}"
            )

    def serialize(self) -> dict:
        """Serializes a MeasureConfig into a dictionary"""
        return {
            "kind": self.kind.value,
            "p": None if self.p is None else str(self.p),
            "beta": str(self.beta),
            "discount_base": self.discount_base,
            "gain": self.gain.value,
        }

    @classmethod
    def deserialize(cls, data: dict) -> "MeasureConfig":
        """
        Deserializes a MeasureConfig from a dictionary
        Args:
            data (dict): A dictionary containing the MeasureConfig data
        """
        try:
            return cls(
                kind=MeasureKind(data["kind"]),
                p=data.get("p"),
                beta=data.get("beta") or Fraction(1),
                discount_base=data.get("discount_base", 2),
                gain=Gain(data.get("gain", Gain.LINEAR.value)),
            )
        except KeyError as error:
            raise DataValidationError("Invalid measure: missing " + error.args[0]) from error
        except ValueError as error:
            raise DataValidationError("Invalid measure: " + str(error)) from error


######################################################################
#  M E A S U R E S
######################################################################
def _check_length(element: Element, spec: UniverseSpec):
    if element.n != spec.n:
        raise DataValidationError(f"Element {element} does not have length N={spec.n}")


def _require_binary(element: Element, spec: UniverseSpec, name: str):
    _check_length(element, spec)
    if not spec.binary or any(grade > 1 for grade in element.grades):
        raise UnsupportedMeasureError(f"{name} needs binary grades, got {element}")


def _require_rank(element: Element, name: str):
    if element.mode is not Mode.RANK:
        raise UnsupportedMeasureError(f"{name} is undefined on the set-based list {element}")


def precision(element: Element, spec: UniverseSpec) -> Fraction:
    """Relevant retrieved over N"""
    _require_binary(element, spec, "precision")
    return Fraction(element.relevant_count, spec.n)


def recall(element: Element, spec: UniverseSpec) -> Fraction:
    """Relevant retrieved over the recall base"""
    _require_binary(element, spec, "recall")
    if not spec.recall_base:
        raise DataValidationError("Recall needs a positive recall base")
    return Fraction(element.relevant_count, spec.recall_base)


def f_measure(element: Element, spec: UniverseSpec, beta=Fraction(1)) -> Fraction:
    """Weighted harmonic mean of precision and recall, 0 when both are 0"""
    beta = parse_rational(beta)
    prec = precision(element, spec)
    rec = recall(element, spec)
    if prec == 0 and rec == 0:
        return Fraction(0)
    beta2 = beta * beta
    return (1 + beta2) * prec * rec / (beta2 * prec + rec)


def average_precision(element: Element, spec: UniverseSpec) -> Fraction:
    """Sum of precision at every relevant rank over the recall base"""
    _require_rank(element, "ap")
    _require_binary(element, spec, "ap")
    total = Fraction(0)
    found = 0
    for rank, grade in enumerate(element.grades, start=1):
        if grade:
            found += 1
            total += Fraction(found, rank)
    return total / spec.recall_base


def dcg(
    element: Element,
    spec: UniverseSpec,
    discount_base: int = 2,
    gain: Gain = Gain.LINEAR,
):
    """Discounted cumulated gain

    Sum over ranks of gain(g_i) / log_b(i + 1), as a gmpy2 mpfr with
    DCG_PRECISION_BITS of precision.
    """
    _require_rank(element, "dcg")
    _check_length(element, spec)
    with real_context():
        log_base = gmpy2.log(discount_base)
        total = gmpy2.mpfr(0)
        for rank, grade in enumerate(element.grades, start=1):
            if not grade:
                continue
            value = grade if gain is Gain.LINEAR else 2**grade - 1
            total += value * log_base / gmpy2.log(rank + 1)
        return total


def err(element: Element, spec: UniverseSpec) -> Fraction:
    """Expected reciprocal rank under the cascade model"""
    _require_rank(element, "err")
    _check_length(element, spec)
    top = 2**spec.g_max
    total = Fraction(0)
    still_looking = Fraction(1)
    for rank, grade in enumerate(element.grades, start=1):
        stop = Fraction(2**grade - 1, top)
        total += still_looking * stop / rank
        still_looking *= 1 - stop
    return total


def rbp(element: Element, spec: UniverseSpec, p) -> Fraction:
    """Rank-biased precision with persistence p"""
    _require_rank(element, "rbp")
    _check_length(element, spec)
    p = parse_rational(p)
    if not 0 < p < 1:
        raise DataValidationError(f"RBP needs 0 < p < 1, got {p}")
    total = Fraction(0)
    weight = Fraction(1)
    for grade in element.grades:
        total += weight * Fraction(grade, spec.g_max)
        weight *= p
    return (1 - p) * total


MEASURES: Dict[MeasureKind, Callable[[Element, UniverseSpec, MeasureConfig], Value]] = {
    MeasureKind.PRECISION: lambda e, spec, cfg: precision(e, spec),
    MeasureKind.RECALL: lambda e, spec, cfg: recall(e, spec),
    MeasureKind.F_MEASURE: lambda e, spec, cfg: f_measure(e, spec, cfg.beta),
    MeasureKind.AP: lambda e, spec, cfg: average_precision(e, spec),
    MeasureKind.DCG: lambda e, spec, cfg: dcg(e, spec, cfg.discount_base, cfg.gain),
    MeasureKind.ERR: lambda e, spec, cfg: err(e, spec),
    MeasureKind.RBP: lambda e, spec, cfg: rbp(e, spec, cfg.p),
}


######################################################################
#  M E A S U R E   V A L U E S
######################################################################
def format_value(value) -> str:
    """Renders a value exactly: "num/den" for rationals, 34 digits for DCG"""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(value, ".34g")


@dataclass(frozen=True, eq=False)
class MeasureValues:
    """
    Class that represents one real mapping f on a universe

    values holds f(x) for every element x, by enumeration index.
    """

    universe: Universe
    values: Tuple[Value, ...]
    config: Optional[MeasureConfig] = None
    label: Optional[str] = None

    def __post_init__(self):
        if len(self.values) != len(self.universe):
            raise DataValidationError(
                f"{len(self.values)} values for a universe of {len(self.universe)} elements"
            )

    def __getitem__(self, element: Element) -> Value:
        return self.values[self.universe.index(element)]

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"<MeasureValues {self.name} on {self.universe!r}>"

    @property
    def name(self) -> str:
        """Label used in reports"""
        if self.label:
            return self.label
        return self.config.name if self.config else "f"

    @property
    def exact(self) -> bool:
        """True when every value is an exact rational"""
        return all(isinstance(value, (Fraction, int)) for value in self.values)

    def items(self) -> Iterator[Tuple[Element, Value]]:
        """Yields (element, value) in enumeration order"""
        return zip(self.universe.elements, self.values)

    def affine(self, scale, shift) -> "MeasureValues":
        """Returns scale * f + shift as a new mapping"""
        scale = parse_rational(scale)
        shift = parse_rational(shift)
        with real_context():
            values = tuple(scale * value + shift for value in self.values)
        return MeasureValues(self.universe, values, None, f"{scale}*{self.name}+{shift}")

    @classmethod
    def from_mapping(cls, universe: Universe, mapping: Dict[Element, Value], label: str):
        """Builds values from an element to value mapping"""
        try:
            values = tuple(mapping[element] for element in universe.elements)
        except KeyError as error:
            raise DataValidationError(f"No value for element {error.args[0]}") from error
        return cls(universe, values, None, label)

    def serialize(self) -> dict:
        """Serializes MeasureValues into a dictionary"""
        return {
            "measure": self.name,
            "universe": self.universe.spec.serialize(),
            "values": [
                {
                    "element": str(element),
                    "value_exact": format_value(value),
                    "value_float": repr(float(value)),
                }
                for element, value in self.items()
            ],
        }


def evaluate_all(measure_config: MeasureConfig, universe: Universe) -> MeasureValues:
    """Evaluates one measure on every element of a universe

    :param measure_config: the measure to evaluate
    :param universe: the universe to evaluate it on
    :return: the total mapping, in enumeration order
    :rtype: MeasureValues

    """
    measure_config.check_universe(universe.spec)
    logger.info("Evaluating %s on %r", measure_config.name, universe)
    function = MEASURES[measure_config.kind]
    values = tuple(function(element, universe.spec, measure_config) for element in universe)
    return MeasureValues(universe, values, measure_config)


def export_csv(values: MeasureValues, stream):
    """Writes the measure table as CSV: element, value_exact, value_float"""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["element", "value_exact", "value_float"])
    for element, value in values.items():
        writer.writerow([str(element), format_value(value), repr(float(value))])
