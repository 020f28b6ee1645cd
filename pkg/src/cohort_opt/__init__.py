"""Cohort Intelligence with static and dynamic penalty constraint handling."""
from __future__ import annotations

__version__ = "0.1.0"

from .engine import EngineConfig, RunRecord, run
from .errors import CohortOptError, ConfigurationError, EvaluationError, ProblemLookupError
from .penalty import PenaltyScheme, make_penalized
from .problems import CATALOG_NAMES, TABLE_PROBLEMS, ProblemSpec, catalog, catalog_lookup

__all__ = [
    "CATALOG_NAMES", "TABLE_PROBLEMS", "CohortOptError", "ConfigurationError", "EngineConfig",
    "EvaluationError", "PenaltyScheme", "ProblemLookupError", "ProblemSpec", "RunRecord",
    "catalog", "catalog_lookup", "make_penalized", "run",
]
