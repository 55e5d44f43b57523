"""
Package: scalekit

Decides whether IR evaluation measures are ordinal or interval scales on
explicit orderings of finite universes of assessed document lists.

This module creates and configures the Flask app that hosts the
configuration, the logging and the command line
"""
from flask import Flask
from scalekit import config
from scalekit.common import log_handlers

# NOTE: Do not change the order of this code
# The Flask app must be created
# BEFORE you import modules that depend on it !!!

# Create the Flask app
app = Flask(__name__)  # pylint: disable=invalid-name

# Load Configurations, SCALEKIT_<NAME> environment variables win
app.config.from_object(config)
app.config.from_prefixed_env("SCALEKIT")

# Reports keep the field order their serialize() methods declare
app.json.sort_keys = False

# Dependencies require we import the commands AFTER the Flask app is created
# pylint: disable=wrong-import-position, wrong-import-order, cyclic-import
from scalekit import commands  # noqa: F401, E402
from scalekit.common import error_handlers  # noqa: F401, E402

log_handlers.init_logging(app, app.config["LOGGING_LEVEL"])

app.logger.debug("  S C A L E K I T   R E A D Y  ".center(70, "*"))
