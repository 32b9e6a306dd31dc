# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Init

 Init File for the Hamming Memory Simulator
"""

import logging
import os

from .codes import make_code, encode, decode
from .config import Config, RunConfig
from .layout import MemoryGeometry, builtin_layouts, block_of
from .faults import load_catalog, place
from .campaign import classify_placement, run_campaign, aggregate_means, run_physical
from .reliability import (
    ReliabilityInput, p_if, p_mf, f_c, reliability, fc_table_from_campaign, redundancy_rate
)

__title__     = "Hamming Memory Simulator"
__license__   = ""
__version__   = "0.1.0"

__all__ = [
    "Config", "RunConfig",
    "make_code", "encode", "decode",
    "MemoryGeometry", "builtin_layouts", "block_of",
    "load_catalog", "place",
    "classify_placement", "run_campaign", "aggregate_means", "run_physical",
    "ReliabilityInput", "p_if", "p_mf", "f_c", "reliability", "fc_table_from_campaign",
    "redundancy_rate",
]

# Initiating logging
strLevel = os.environ.get("HAMSIM_LOGLEVEL", "INFO")
if hasattr(logging, strLevel):
    logLevel = getattr(logging, strLevel)
else:
    print("Invalid logging level '%s' in environment variable HAMSIM_LOGLEVEL" % strLevel)
    logLevel = logging.INFO

if logLevel < logging.INFO:
    logFormat = "[{asctime:s}] {levelname:8s} {message:}"
else:
    logFormat = "{levelname:8s} {message:}"

logging.basicConfig(format=logFormat, style="{", level=logLevel)
logger = logging.getLogger(__name__)
