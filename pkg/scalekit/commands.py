"""
ScaleKit Command Line

Every subcommand turns its flags into a RunConfig and hands it to run(),
which writes the report to stdout and returns the exit status. Diagnostics
and error payloads go to stderr.

Usage: flask --app scalekit <subcommand> [flags]  or  python -m scalekit ...
"""
import io
from pathlib import Path
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import click

from scalekit import app, repro
from scalekit.common import error_handlers, status
from scalekit.common.errors import DataValidationError, ScaleKitError
from scalekit.universe import Mode, Universe, UniverseSpec, enumerate_universe
from scalekit.measures import (
    Gain,
    MeasureConfig,
    MeasureKind,
    MeasureValues,
    evaluate_all,
    export_csv,
    format_value,
    parse_rational,
)
from scalekit.orderings import BUILTIN_ORDERINGS, Ordering, WeakOrder, order_from_measure, parse_ordering
from scalekit.scalecheck import check_difference_structure, check_interval, check_ordinal
from scalekit.search import OrderSpace, SearchSpec, census

INDUCED = "induced"
SCHEMA_PATH = "static/report.schema.json"

# Output formats per subcommand, the first one is the default
FORMATS = {
    "universe": ("json", "text"),
    "measure": ("json", "csv", "text"),
    "check": ("json", "text"),
    "diffstruct": ("json", "text"),
    "census": ("json", "text"),
    "repro-paper": ("text", "json"),
}


######################################################################
#  R U N   C O N F I G
######################################################################
@dataclass(frozen=True)
class RunConfig:
    """
    Class that describes one command line run

    Caps, eps and witness limits left as None come from app.config.
    """

    subcommand: str
    mode: Mode = Mode.RANK
    n: int = 2
    g_max: int = 1
    recall_base: Optional[int] = None
    measures: Tuple[MeasureKind, ...] = ()
    p: Tuple[Fraction, ...] = ()
    beta: Fraction = Fraction(1)
    discount_base: int = 2
    gain: Gain = Gain.LINEAR
    ordering: Optional[str] = None
    output_format: Optional[str] = None
    eps: Optional[float] = None
    seed: Optional[int] = None
    samples: Optional[int] = None
    order_space: OrderSpace = OrderSpace.STRICT_TOTAL
    max_elements: Optional[int] = None
    max_orders: Optional[int] = None
    max_witnesses: Optional[int] = None
    criteria: Tuple[int, ...] = ()

    @classmethod
    def from_flags(cls, subcommand: str, flags: dict) -> "RunConfig":
        """Builds a RunConfig from the parsed click parameters"""
        values = {key: value for key, value in flags.items() if value is not None}
        for key, convert in (("mode", Mode), ("gain", Gain), ("order_space", OrderSpace)):
            if key in values:
                values[key] = convert(values[key])
        if "measure" in values:
            values["measures"] = tuple(MeasureKind(kind) for kind in values.pop("measure"))
        if "p" in values:
            values["p"] = tuple(values["p"])
        if "only" in values:
            values["criteria"] = tuple(values.pop("only"))
        return cls(subcommand=subcommand, **values)

    @property
    def report_format(self) -> str:
        """The requested output format, checked against the subcommand"""
        formats = FORMATS[self.subcommand]
        if self.output_format is None:
            return formats[0]
        if self.output_format not in formats:
            raise DataValidationError(
                f"{self.subcommand} reports come as {', '.join(formats)}, not {self.output_format}"
            )
        return self.output_format

    def universe_spec(self) -> UniverseSpec:
        """The universe this run works on"""
        return UniverseSpec(self.n, self.g_max, self.mode, self.recall_base)

    def measure_configs(self) -> Tuple[MeasureConfig, ...]:
        """One MeasureConfig per measure flag, and per --p value for RBP"""
        configs = []
        for kind in self.measures:
            if kind is MeasureKind.RBP:
                if not self.p:
                    raise DataValidationError("RBP needs a persistence: pass --p num/den")
                configs.extend(MeasureConfig(kind, p=p) for p in self.p)
            else:
                configs.append(
                    MeasureConfig(
                        kind, beta=self.beta, discount_base=self.discount_base, gain=self.gain
                    )
                )
        return tuple(configs)


######################################################################
#  U T I L I T Y   F U N C T I O N S
######################################################################
def setting(value, key: str):
    """A RunConfig value, or the app.config default when it is None"""
    return app.config[key] if value is None else value


def render_json(data) -> str:
    """Renders a report with the app JSON provider, keys in declared order"""
    return app.json.dumps(data, indent=2) + "\n"


def report_schema() -> dict:
    """Loads the JSON schema every JSON report validates against"""
    with app.open_resource(SCHEMA_PATH) as schema_file:
        return app.json.load(schema_file)


def build_universe(run_config: RunConfig) -> Universe:
    """Enumerates the universe of a run under its element cap"""
    return enumerate_universe(
        run_config.universe_spec(), max_elements=setting(run_config.max_elements, "MAX_ELEMENTS")
    )


def single_measure(run_config: RunConfig, universe: Universe) -> MeasureValues:
    """Evaluates the one measure a subcommand works with"""
    configs = run_config.measure_configs()
    if len(configs) != 1:
        raise DataValidationError(
            f"{run_config.subcommand} takes exactly one measure, got {len(configs)}"
        )
    return evaluate_all(configs[0], universe)


def load_ordering(
    run_config: RunConfig, universe: Universe, values: Optional[MeasureValues] = None
) -> Ordering:
    """Resolves --ordering: a builtin name, induced, or an ordering file"""
    source = run_config.ordering
    if not source:
        raise DataValidationError(
            f"--ordering is required: one of {', '.join(sorted(BUILTIN_ORDERINGS))}, "
            f"{INDUCED} or a file path"
        )
    if source == INDUCED:
        if values is None:
            values = single_measure(run_config, universe)
        return order_from_measure(values, setting(run_config.eps, "DCG_EPSILON"))
    if source in BUILTIN_ORDERINGS:
        return BUILTIN_ORDERINGS[source](universe)
    path = Path(source)
    if not path.is_file():
        raise DataValidationError(
            f"Unknown ordering '{source}': not a builtin, {INDUCED} or an existing file"
        )
    app.logger.info("Reading ordering from %s", path)
    return parse_ordering(path.read_text(encoding="utf-8"), universe, name=path.name)


def _witness_lines(witnesses) -> str:
    lines = []
    for witness in witnesses:
        elements = ", ".join(str(element) for element in witness.elements)
        values = ", ".join(format_value(value) for value in witness.values)
        lines.append(f"  witness ({elements}) values ({values}): {witness.reason}\n")
    return "".join(lines)


######################################################################
#  S U B C O M M A N D S
######################################################################
def universe_report(run_config: RunConfig) -> Tuple[str, int]:
    """Lists every element of the universe"""
    output_format = run_config.report_format
    universe = build_universe(run_config)
    if output_format == "text":
        return "".join(f"{element}\n" for element in universe), status.EXIT_0_OK
    return render_json({"report": "universe", **universe.serialize()}), status.EXIT_0_OK


def measure_report(run_config: RunConfig) -> Tuple[str, int]:
    """Tabulates one measure over the universe"""
    output_format = run_config.report_format
    values = single_measure(run_config, build_universe(run_config))
    if output_format == "csv":
        stream = io.StringIO()
        export_csv(values, stream)
        return stream.getvalue(), status.EXIT_0_OK
    if output_format == "text":
        lines = [f"{element}\t{format_value(value)}\n" for element, value in values.items()]
        return f"# {values.name}\n" + "".join(lines), status.EXIT_0_OK
    return render_json({"report": "measure", **values.serialize()}), status.EXIT_0_OK


def check_report(run_config: RunConfig) -> Tuple[str, int]:
    """Interval verdict on a weak order, ordinal verdict on a partial order"""
    output_format = run_config.report_format
    universe = build_universe(run_config)
    values = single_measure(run_config, universe)
    order = load_ordering(run_config, universe, values)
    eps = setting(run_config.eps, "DCG_EPSILON")
    max_witnesses = setting(run_config.max_witnesses, "MAX_WITNESSES")
    if isinstance(order, WeakOrder):
        report = check_interval(values, order, eps, max_witnesses)
    else:
        report = check_ordinal(values, order, eps, max_witnesses)

    if output_format == "text":
        text = (
            f"{report.measure} on {report.ordering} "
            f"({report.provenance}, {report.kind.value}): {report.verdict.value}\n"
        )
        data = report.serialize()
        if data["spacing"] is not None:
            text += f"  spacing {data['spacing']}\n"
        return text + _witness_lines(report.witnesses), status.EXIT_0_OK
    return render_json(report.serialize()), status.EXIT_0_OK


def diffstruct_report(run_config: RunConfig) -> Tuple[str, int]:
    """Difference-structure axioms on a weak order"""
    output_format = run_config.report_format
    universe = build_universe(run_config)
    order = load_ordering(run_config, universe)
    report = check_difference_structure(
        order, max_elements=app.config["DIFFSTRUCT_MAX_ELEMENTS"]
    )
    if output_format == "text":
        outcome = "holds" if report.verdict else f"fails {report.failed_axiom}"
        text = f"difference structure on {report.ordering} ({report.provenance}): {outcome}\n"
        if report.witness is not None:
            text += _witness_lines([report.witness])
        return text, status.EXIT_0_OK
    return render_json(report.serialize()), status.EXIT_0_OK


def census_report(run_config: RunConfig) -> Tuple[str, int]:
    """Verdict counts of every measure over an order space"""
    output_format = run_config.report_format
    universe = build_universe(run_config)
    spec = SearchSpec(
        universe,
        run_config.measure_configs(),
        order_space=run_config.order_space,
        seed=run_config.seed,
        sample_count=run_config.samples,
        max_witnesses=setting(run_config.max_witnesses, "MAX_WITNESSES"),
        max_orders=setting(run_config.max_orders, "MAX_ENUMERATED_ORDERS"),
        eps=setting(run_config.eps, "DCG_EPSILON"),
    )
    result = census(spec)
    if output_format == "text":
        lines = [
            f"{entry.measure} over {entry.examined} {entry.mode} {entry.order_space.value} orders: "
            f"ordinal {entry.ordinal_count}, interval {entry.interval_count}, "
            f"not-ordinal {entry.not_ordinal_count}\n"
            for entry in result.entries
        ]
        return "".join(lines), status.EXIT_0_OK
    return render_json(result.serialize()), status.EXIT_0_OK


def repro_report(run_config: RunConfig) -> Tuple[str, int]:
    """Runs the reproduction criteria, exit 1 when one fails"""
    output_format = run_config.report_format
    results = repro.run_suite(run_config.criteria)
    exit_code = (
        status.EXIT_0_OK if all(result.passed for result in results)
        else status.EXIT_1_FAILED_CRITERIA
    )
    if output_format == "json":
        return render_json(repro.serialize(results)), exit_code
    return repro.render(results), exit_code


SUBCOMMANDS: Dict[str, Callable[[RunConfig], Tuple[str, int]]] = {
    "universe": universe_report,
    "measure": measure_report,
    "check": check_report,
    "diffstruct": diffstruct_report,
    "census": census_report,
    "repro-paper": repro_report,
}


def run(run_config: RunConfig) -> int:
    """
    Runs one subcommand

    The report goes to stdout. Errors become a JSON payload on stderr and
    exit 2 (configuration) or exit 3 (cap exceeded); a failing scale check
    is a completed analysis and exits 0.
    """
    app.logger.info("Request to run %s", run_config.subcommand)
    try:
        handler = SUBCOMMANDS.get(run_config.subcommand)
        if handler is None:
            raise DataValidationError(f"Unknown subcommand '{run_config.subcommand}'")
        output, exit_code = handler(run_config)
    except ScaleKitError as error:
        payload, exit_code = error_handlers.handle(error)
        click.echo(app.json.dumps(payload), err=True)
        return exit_code
    click.echo(output, nl=False)
    return exit_code


######################################################################
#  C L I C K   O P T I O N S
######################################################################
class RationalType(click.ParamType):
    """Exact rational flag, "num/den" or an integer"""

    name = "rational"

    def convert(self, value, param, ctx):
        try:
            return parse_rational(value)
        except DataValidationError as error:
            self.fail(str(error), param, ctx)
            return None


RATIONAL = RationalType()


def _apply(options):
    def decorator(function):
        for option in reversed(options):
            function = option(function)
        return function

    return decorator


universe_options = _apply(
    [
        click.option(
            "--mode", type=click.Choice([mode.value for mode in Mode]), default=Mode.RANK.value,
            show_default=True, help="rank-based vectors or set-based multisets",
        ),
        click.option("--n", "n", type=click.IntRange(min=1), required=True, help="list length N"),
        click.option(
            "--g-max", type=click.IntRange(1, 9), default=1, show_default=True,
            help="top relevance grade, 1 for binary relevance",
        ),
        click.option("--recall-base", type=click.IntRange(min=1), help="recall base, defaults to N"),
        click.option(
            "--max-elements", type=click.IntRange(min=1),
            help="universe cap, defaults to SCALEKIT_MAX_ELEMENTS",
        ),
    ]
)

measure_options = _apply(
    [
        click.option(
            "--measure", type=click.Choice([kind.value for kind in MeasureKind]),
            multiple=True, help="measure to evaluate, repeat for a census",
        ),
        click.option("--p", type=RATIONAL, multiple=True, help="RBP persistence as num/den"),
        click.option("--beta", type=RATIONAL, default="1", show_default=True, help="F-measure beta"),
        click.option(
            "--discount-base", type=click.IntRange(min=2), default=2, show_default=True,
            help="DCG logarithm base",
        ),
        click.option(
            "--gain", type=click.Choice([gain.value for gain in Gain]),
            default=Gain.LINEAR.value, show_default=True, help="DCG gain function",
        ),
        click.option("--eps", type=float, help="DCG comparison tolerance"),
    ]
)

ordering_option = click.option(
    "--ordering", help=f"{', '.join(sorted(BUILTIN_ORDERINGS))}, {INDUCED} or an ordering file"
)
witness_option = click.option(
    "--max-witnesses", type=click.IntRange(min=1), help="witnesses kept per verdict"
)


def format_option(subcommand: str):
    """--format restricted to the formats of one subcommand"""
    formats = FORMATS[subcommand]
    return click.option(
        "--format", "output_format", type=click.Choice(formats), default=formats[0],
        show_default=True, help="report format",
    )


def _exit(subcommand: str, flags: dict):
    click.get_current_context().exit(run(RunConfig.from_flags(subcommand, flags)))


######################################################################
#  C O M M A N D S
######################################################################
@app.cli.command("universe")
@universe_options
@format_option("universe")
def universe_command(**flags):
    """Lists every element of a universe"""
    _exit("universe", flags)


@app.cli.command("measure")
@universe_options
@measure_options
@format_option("measure")
def measure_command(**flags):
    """Tabulates a measure over a universe"""
    _exit("measure", flags)


@app.cli.command("check")
@universe_options
@measure_options
@ordering_option
@witness_option
@format_option("check")
def check_command(**flags):
    """Checks whether a measure is an ordinal or interval scale on an ordering"""
    _exit("check", flags)


@app.cli.command("diffstruct")
@universe_options
@measure_options
@ordering_option
@format_option("diffstruct")
def diffstruct_command(**flags):
    """Verifies the difference-structure axioms on a weak order"""
    _exit("diffstruct", flags)


@app.cli.command("census")
@universe_options
@measure_options
@witness_option
@click.option(
    "--order-space", type=click.Choice([space.value for space in OrderSpace]),
    default=OrderSpace.STRICT_TOTAL.value, show_default=True,
)
@click.option("--samples", type=click.IntRange(min=1), help="sample size, exhaustive when omitted")
@click.option("--seed", type=int, help="sampling seed, required with --samples")
@click.option("--max-orders", type=click.IntRange(min=1), help="order space cap")
@format_option("census")
def census_command(**flags):
    """Counts the orders on which each measure is an ordinal or interval scale"""
    _exit("census", flags)


@app.cli.command("repro-paper")
@click.option(
    "--only", type=click.IntRange(1, len(repro.CRITERIA)), multiple=True,
    help="run only these criteria",
)
@format_option("repro-paper")
def repro_paper_command(**flags):
    """Reproduces every acceptance criterion and prints PASS or FAIL for each"""
    _exit("repro-paper", flags)
