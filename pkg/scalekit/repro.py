"""
Reproduction suite

Each criterion recomputes one claim from scratch and reports PASS or FAIL
with a deterministic one-line detail. No timings are reported, so two runs
print the same bytes.
"""
import random
import logging
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from scalekit import config, oracle
from scalekit.common.errors import UnsupportedMeasureError
from scalekit.universe import Mode, UniverseSpec, enumerate_universe
from scalekit.measures import MeasureConfig, MeasureKind, evaluate_all
from scalekit.orderings import order_from_measure, paper_counterexample_order, rbto, sbto
from scalekit.scalecheck import (
    IntervalVerdict,
    OrdinalVerdict,
    affine_relate,
    canonical_interval_scale,
    check_difference_structure,
    check_interval,
    check_ordinal,
)
from scalekit.search import (
    OrderSpace,
    SearchSpec,
    census,
    enumerate_strict_orders,
    interval_on_induced_order,
    sample_orders,
)

logger = logging.getLogger("scalekit")

SEED = 20240501
COHERENCE_SAMPLES = 1000

Outcome = Tuple[bool, str]


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one criterion"""

    number: int
    title: str
    passed: bool
    detail: str

    def render(self) -> str:
        """One PASS or FAIL line"""
        return f"{'PASS' if self.passed else 'FAIL'} {self.number} {self.title}: {self.detail}\n"

    def serialize(self) -> dict:
        """Serializes a CriterionResult into a dictionary"""
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
        }


CRITERIA: Dict[int, Tuple[str, Callable[[], Outcome]]] = {}


def criterion(number: int, title: str):
    """Registers a criterion under its number"""

    def decorator(function: Callable[[], Outcome]) -> Callable[[], Outcome]:
        CRITERIA[number] = (title, function)
        return function

    return decorator


def _binary(n: int, mode: Mode):
    return enumerate_universe(UniverseSpec(n, 1, mode))


def _summary(failures: List[str], success: str) -> Outcome:
    if failures:
        return False, "; ".join(failures[:5])
    return True, success


######################################################################
#  P A P E R   C L A I M S
######################################################################
@criterion(1, "counterexample order")
def counterexample() -> Outcome:
    """P, R and F are not ordinal on {0,1} < {0,0} < {1,1}"""
    universe = enumerate_universe(UniverseSpec(2, 1, Mode.SET, recall_base=2))
    order = paper_counterexample_order(universe)
    expected = (universe.lookup("00"), universe.lookup("10"))
    failures = []
    for kind in (MeasureKind.PRECISION, MeasureKind.RECALL, MeasureKind.F_MEASURE):
        report = check_ordinal(evaluate_all(MeasureConfig(kind), universe), order)
        first = report.witnesses[0].elements if report.witnesses else ()
        if report.verdict is not OrdinalVerdict.NOT_ORDINAL or first != expected:
            failures.append(f"{kind.value} is {report.verdict.value}")
    return _summary(
        failures, "precision, recall and f-measure are not-ordinal, witness (00, 10)"
    )


@criterion(2, "set-based total order")
def set_based_intervals() -> Outcome:
    """P, R and F are interval scales on sbto with spacings 1/N, 1/RB, 2/(N+RB)"""
    failures = []
    for n in range(1, 11):
        universe = _binary(n, Mode.SET)
        order = sbto(universe)
        expected = {
            MeasureKind.PRECISION: Fraction(1, n),
            MeasureKind.RECALL: Fraction(1, n),
            MeasureKind.F_MEASURE: Fraction(2, 2 * n),
        }
        for kind, spacing in expected.items():
            report = check_interval(evaluate_all(MeasureConfig(kind), universe), order)
            if report.verdict is not IntervalVerdict.INTERVAL or report.spacing != spacing:
                failures.append(f"N={n} {kind.value} is {report.verdict.value}")
    return _summary(failures, "interval for N=1..10 with spacings 1/N, 1/RB and 2/(N+RB)")


@criterion(3, "rank-based total order")
def rank_based_intervals() -> Outcome:
    """Only RBP with p = 1/2 is an interval scale on rbto"""
    failures = []
    for n in range(2, 11):
        universe = _binary(n, Mode.RANK)
        order = rbto(universe)

        def verdict(measure_config: MeasureConfig):
            return check_interval(evaluate_all(measure_config, universe), order, config.DCG_EPSILON)

        half = verdict(MeasureConfig(MeasureKind.RBP, p=Fraction(1, 2)))
        if half.verdict is not IntervalVerdict.INTERVAL or half.spacing != Fraction(1, 2**n):
            failures.append(f"N={n} rbp(p=1/2) is {half.verdict.value}")
        for p in (Fraction(1, 4), Fraction(1, 3)):
            report = verdict(MeasureConfig(MeasureKind.RBP, p=p))
            if report.verdict is not IntervalVerdict.ORDINAL_NOT_INTERVAL:
                failures.append(f"N={n} rbp(p={p}) is {report.verdict.value}")
        steep = verdict(MeasureConfig(MeasureKind.RBP, p=Fraction(3, 4)))
        # 011 outscores 100 only from N = 3 on
        expected = IntervalVerdict.NOT_ORDINAL if n >= 3 else IntervalVerdict.ORDINAL_NOT_INTERVAL
        if steep.verdict is not expected:
            failures.append(f"N={n} rbp(p=3/4) is {steep.verdict.value}")
        for kind in (MeasureKind.AP, MeasureKind.ERR, MeasureKind.DCG):
            report = verdict(MeasureConfig(kind))
            if report.verdict is IntervalVerdict.INTERVAL:
                failures.append(f"N={n} {kind.value} is interval")
    return _summary(
        failures, "for N=2..10 only rbp(p=1/2) is interval, with spacing 2^-N"
    )


######################################################################
#  P R O P E R T Y   S U I T E S
######################################################################
@criterion(4, "order dependence census")
def order_dependence() -> Outcome:
    """Precision on N=2 set-based lists: 1 of 6 strict orders, 1 of 13 weak orders"""
    universe = _binary(2, Mode.SET)
    precision = (MeasureConfig(MeasureKind.PRECISION),)
    strict = census(SearchSpec(universe, precision, OrderSpace.STRICT_TOTAL)).entries[0]
    weak = census(SearchSpec(universe, precision, OrderSpace.WEAK)).entries[0]
    values = oracle.set_based_precision(2)
    strict_oracle = oracle.strict_counts(values)
    weak_oracle = oracle.weak_counts(values)
    found = (
        (strict.examined, strict.ordinal_count, strict.interval_count),
        (weak.examined, weak.ordinal_count, weak.interval_count),
    )
    if found != ((6, 1, 1), (13, 1, 1)) or found != (strict_oracle, weak_oracle):
        return False, f"census {found}, oracle {(strict_oracle, weak_oracle)}"
    return True, "ordinal on 1 of 6 strict orders, interval on 1 of 13 weak orders, oracle agrees"


@criterion(5, "difference structures")
def difference_structures() -> Outcome:
    """Every strict total order of up to 8 elements is a difference structure"""
    checked = 0
    for n in range(1, 8):
        for order in enumerate_strict_orders(_binary(n, Mode.SET)):
            report = check_difference_structure(order)
            checked += 1
            if not report.verdict:
                return False, f"{order.name} fails {report.failed_axiom}"
    injected = check_difference_structure(
        rbto(_binary(2, Mode.RANK)), relation=lambda x, y, z, w: True
    )
    if injected.verdict or injected.witness is None:
        return False, "an everything-related relation passed"
    return True, f"{checked} strict orders hold, injected relation fails {injected.failed_axiom}"


def _coherence_universes():
    specs = [UniverseSpec(n, 1, Mode.SET) for n in range(1, 8)]
    specs += [UniverseSpec(n, 1, Mode.RANK) for n in range(1, 4)]
    specs += [UniverseSpec(1, g_max, Mode.RANK) for g_max in range(2, 8)]
    specs.append(UniverseSpec(2, 1, Mode.SET, recall_base=3))
    return [enumerate_universe(spec) for spec in specs]


def _compatible_configs(spec: UniverseSpec) -> List[MeasureConfig]:
    configs = []
    candidates = [MeasureConfig(kind) for kind in MeasureKind if kind is not MeasureKind.RBP]
    candidates += [MeasureConfig(MeasureKind.RBP, p=Fraction(1, k)) for k in (2, 3, 4)]
    for measure_config in candidates:
        try:
            measure_config.check_universe(spec)
        except UnsupportedMeasureError:
            continue
        configs.append(measure_config)
    return configs


@criterion(6, "uniqueness coherence")
def uniqueness_coherence() -> Outcome:
    """The interval verdict equals an increasing affine relation to the class index"""
    rng = random.Random(SEED)
    universes = _coherence_universes()
    agreed = 0
    interval = 0
    for _ in range(COHERENCE_SAMPLES):
        universe = rng.choice(universes)
        order = next(sample_orders(universe, OrderSpace.WEAK, rng.randrange(2**32), 1))
        source = rng.randrange(3)
        if source == 0:
            values = evaluate_all(rng.choice(_compatible_configs(universe.spec)), universe)
        else:
            base = order
            if source == 2:
                base = order_from_measure(
                    evaluate_all(rng.choice(_compatible_configs(universe.spec)), universe),
                    config.DCG_EPSILON,
                )
            scale = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
            shift = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            values = canonical_interval_scale(base).affine(scale, shift)
        report = check_interval(values, order, config.DCG_EPSILON)
        coefficients = affine_relate(values, canonical_interval_scale(order), config.DCG_EPSILON)
        coherent = coefficients is not None and coefficients[0] > 0
        agreed += (report.verdict is IntervalVerdict.INTERVAL) == coherent
        interval += coherent
    detail = f"{agreed}/{COHERENCE_SAMPLES} sampled pairs agree ({interval} interval)"
    return agreed == COHERENCE_SAMPLES, detail


def _all_rank_configs() -> List[MeasureConfig]:
    configs = [MeasureConfig(kind) for kind in MeasureKind if kind is not MeasureKind.RBP]
    configs += [
        MeasureConfig(MeasureKind.RBP, p=p)
        for p in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 3), Fraction(3, 4))
    ]
    return configs


@criterion(7, "induced order equivalence")
def induced_order_equivalence() -> Outcome:
    """The induced order decides whether any weak order is an interval one"""
    configs = _all_rank_configs()
    failures = []
    compared = 0
    for n in range(1, 4):
        universe = _binary(n, Mode.RANK)
        result = census(
            SearchSpec(universe, configs, OrderSpace.WEAK, max_witnesses=0, eps=config.DCG_EPSILON)
        )
        for measure_config, entry in zip(configs, result.entries):
            values = evaluate_all(measure_config, universe)
            induced = interval_on_induced_order(values, config.DCG_EPSILON).verdict
            compared += 1
            if (induced is IntervalVerdict.INTERVAL) != (entry.interval_count > 0):
                failures.append(f"N={n} {entry.measure}")
    return _summary(failures, f"{compared} measure and universe pairs agree")


@criterion(8, "determinism")
def determinism() -> Outcome:
    """Recomputing the exact criteria renders the same lines"""
    numbers = (1, 2, 3, 4)
    first = render(run_suite(numbers))
    second = render(run_suite(numbers))
    if first != second:
        return False, "criteria 1-4 rendered differently on a second run"
    return True, "criteria 1-4 render byte-identical lines on a second run"


######################################################################
#  S U I T E
######################################################################
def run_suite(numbers: Sequence[int] = ()) -> List[CriterionResult]:
    """Runs the given criteria, or all of them, in number order"""
    selected = sorted(set(numbers)) if numbers else sorted(CRITERIA)
    results = []
    for number in selected:
        title, function = CRITERIA[number]
        logger.info("Criterion %s: %s", number, title)
        passed, detail = function()
        results.append(CriterionResult(number, title, passed, detail))
    return results


def render(results: Sequence[CriterionResult]) -> str:
    """PASS or FAIL per criterion and a closing tally"""
    passed = sum(1 for result in results if result.passed)
    lines = "".join(result.render() for result in results)
    return f"{lines}{passed}/{len(results)} criteria passed\n"


def serialize(results: Sequence[CriterionResult]) -> dict:
    """Serializes the suite results into a dictionary"""
    return {
        "report": "repro",
        "passed": sum(1 for result in results if result.passed),
        "total": len(results),
        "criteria": [result.serialize() for result in results],
    }
