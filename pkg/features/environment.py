"""
Environment for Behave Testing
"""
import logging
from os import getenv

from scalekit import app

LOGGING_LEVEL = getenv("LOGGING_LEVEL", "CRITICAL").upper()


def before_all(context):
    """ Executed once before all tests """
    app.config["TESTING"] = True
    context.app = app
    context.config.setup_logging()
    logging.disable(getattr(logging, LOGGING_LEVEL, logging.CRITICAL))


def before_scenario(context, scenario):  # pylint: disable=unused-argument
    """ Every scenario gets a fresh command line runner """
    context.runner = app.test_cli_runner()
    context.result = None


def after_all(context):  # pylint: disable=unused-argument
    """ Executed after all tests """
    logging.disable(logging.NOTSET)
