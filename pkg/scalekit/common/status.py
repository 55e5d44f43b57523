# coding: utf8

"""
Descriptive process exit codes, for improved code readability

A completed analysis always exits with EXIT_0_OK whatever the verdicts
are; a scale check that fails is a result, not an error.
"""

# Completed
EXIT_0_OK = 0

# The repro-paper suite ran but at least one criterion failed
EXIT_1_FAILED_CRITERIA = 1

# Bad flags, bad specs, unknown elements, malformed orderings
EXIT_2_CONFIG_ERROR = 2

# Universe or order space above its configured cap
EXIT_3_CAP_EXCEEDED = 3
