"""
Module: errors

Exceptions raised by the scalekit library. The command line maps each
family onto an exit status in error_handlers.
"""


class ScaleKitError(Exception):
    """Base class for all scalekit errors"""


class DataValidationError(ScaleKitError):
    """Used for invalid specs, configs, element strings and orderings"""


class UnsupportedMeasureError(DataValidationError):
    """Used when a measure is not defined for a universe or element"""


class OrderingError(DataValidationError):
    """Used when an ordering is malformed (partition, cycle, unknown element)"""


class UniverseMismatchError(DataValidationError):
    """Used when values and an ordering live on different universes"""


class CapExceededError(ScaleKitError):
    """Used when a universe or an order space is larger than its configured cap"""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} has {size} members, above the cap of {cap}")
        self.what = what
        self.size = size
        self.cap = cap
