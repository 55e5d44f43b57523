"""
Global Configuration for Application
"""
import os
import logging

from dotenv import load_dotenv

# A local .env (see dot-env-example) fills in unset SCALEKIT_ variables
load_dotenv()

# Largest universe enumerate_universe will build
MAX_ELEMENTS = int(os.getenv("SCALEKIT_MAX_ELEMENTS", str(2**20)))

# Difference-structure checks are over pairs of pairs
DIFFSTRUCT_MAX_ELEMENTS = int(os.getenv("SCALEKIT_DIFFSTRUCT_MAX_ELEMENTS", "64"))

# Exhaustive census limit (m! or Fubini(m) orders)
MAX_ENUMERATED_ORDERS = int(os.getenv("SCALEKIT_MAX_ENUMERATED_ORDERS", str(10**6)))

# Witnesses kept per report or per census verdict
MAX_WITNESSES = int(os.getenv("SCALEKIT_MAX_WITNESSES", "5"))

# DCG is the only inexact measure
DCG_EPSILON = float(os.getenv("SCALEKIT_DCG_EPSILON", "1e-9"))
DCG_PRECISION_BITS = int(os.getenv("SCALEKIT_DCG_PRECISION_BITS", "113"))

LOGGING_LEVEL = logging.WARNING
