"""
Module: error_handlers

Maps every scalekit error onto an error payload and a process exit code
"""
from typing import Callable, Dict, Tuple, Type

from scalekit import app
from scalekit.common.errors import (
    CapExceededError,
    DataValidationError,
    OrderingError,
    ScaleKitError,
    UniverseMismatchError,
    UnsupportedMeasureError,
)
from . import status

Handler = Callable[[Exception], Tuple[dict, int]]
HANDLERS: Dict[Type[Exception], Handler] = {}


def errorhandler(exception_type: Type[Exception]):
    """Registers the handler of one exception type"""

    def decorator(function: Handler) -> Handler:
        HANDLERS[exception_type] = function
        return function

    return decorator


def handle(error: ScaleKitError) -> Tuple[dict, int]:
    """Dispatches to the handler of the closest registered exception type"""
    for exception_type in type(error).__mro__:
        if exception_type in HANDLERS:
            return HANDLERS[exception_type](error)
    raise error


######################################################################
# Error Handlers
######################################################################
@errorhandler(UnsupportedMeasureError)
def unsupported_measure(error):
    """Handles measures that are undefined on the universe"""
    return config_error(error, "Unsupported Measure")


@errorhandler(OrderingError)
def invalid_ordering(error):
    """Handles malformed orderings"""
    return config_error(error, "Invalid Ordering")


@errorhandler(UniverseMismatchError)
def universe_mismatch(error):
    """Handles values and orderings over different universes"""
    return config_error(error, "Universe Mismatch")


@errorhandler(DataValidationError)
def config_error(error, label: str = "Configuration Error"):
    """Handles bad specs and configs with EXIT_2_CONFIG_ERROR"""
    message = str(error)
    app.logger.warning(message)
    return (
        {"status": status.EXIT_2_CONFIG_ERROR, "error": label, "message": message},
        status.EXIT_2_CONFIG_ERROR,
    )


@errorhandler(CapExceededError)
def cap_exceeded(error):
    """Handles universes and order spaces above their caps with EXIT_3_CAP_EXCEEDED"""
    message = str(error)
    app.logger.warning(message)
    return (
        {"status": status.EXIT_3_CAP_EXCEEDED, "error": "Cap Exceeded", "message": message},
        status.EXIT_3_CAP_EXCEEDED,
    )
