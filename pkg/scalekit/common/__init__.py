"""
Utility package

This package contains the errors, exit codes and logging set up that are
shared by the library modules and the command line
"""
from .log_handlers import init_logging

__all__ = ('init_logging',)
