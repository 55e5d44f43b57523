# pylint: disable=function-redefined, missing-function-docstring
# flake8: noqa
"""
Scale Steps

Steps file for scale_verdicts.feature, run through the Flask CLI runner
"""
import json
import shlex

from behave import when, then
from jsonschema import validate

from scalekit.commands import report_schema


def report(context):
    """The JSON report of the last command"""
    data = json.loads(context.result.output)
    validate(data, report_schema())
    return data


@when('I run "{command_line}"')
def step_impl(context, command_line):
    context.result = context.runner.invoke(args=shlex.split(command_line))


@then('the command should succeed')
def step_impl(context):
    assert context.result.exit_code == 0, context.result.output


@then('the command should exit with {code:d}')
def step_impl(context, code):
    assert context.result.exit_code == code, context.result.output


@then('the output should contain "{text}"')
def step_impl(context, text):
    assert text in context.result.output, context.result.output


@then('the "{field}" should be "{expected}"')
def step_impl(context, field, expected):
    value = report(context)[field]
    if isinstance(value, bool):
        value = str(value).lower()
    assert value == expected, f"{field} is {value}, expected {expected}"


@then('the first witness should be "{elements}"')
def step_impl(context, elements):
    witness = report(context)["witnesses"][0]
    assert ", ".join(witness["elements"]) == elements, witness


@then('the census of "{measure}" should count {examined:d} orders with {interval:d} interval')
def step_impl(context, measure, examined, interval):
    entries = {entry["measure"]: entry for entry in report(context)["entries"]}
    entry = entries[measure]
    assert entry["examined"] == examined, entry
    assert entry["interval_count"] == interval, entry
