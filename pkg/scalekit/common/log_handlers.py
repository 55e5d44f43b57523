"""
Log Handlers

This module contains utility functions to set up logging
consistently
"""
import sys
import logging


def init_logging(app, level: int):
    """Set up logging for command line runs

    Reports are written to stdout, so every log record goes to stderr.
    """
    app.logger.propagate = False
    app.logger.handlers = [logging.StreamHandler(sys.stderr)]
    app.logger.setLevel(level)
    # Make all log formats consistent
    format_string = "[%(asctime)s] [%(levelname)s] [%(module)s] %(message)s"
    formatter = logging.Formatter(format_string, "%Y-%m-%d %H:%M:%S %z")
    for handler in app.logger.handlers:
        handler.setFormatter(formatter)
    app.logger.debug("Logging handler established")
