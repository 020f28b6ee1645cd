"""Problem model and benchmark catalog."""
from __future__ import annotations

from ..errors import ProblemLookupError
from .deepdraw import (
    DEEPDRAW_PROBLEMS,
    CoupledVars,
    DeepDrawParams,
    coupled_process_vars,
    springback_sdm,
    thickening_value,
    thinning_value,
)
from .design import DESIGN_PROBLEMS, pressure_vessel, tension_spring, welded_beam
from .gsuite import G_PROBLEMS
from .model import Features, ProblemSpec, make_spec

_FACTORIES = {**G_PROBLEMS, **DESIGN_PROBLEMS, **DEEPDRAW_PROBLEMS}
_CACHE: dict[str, ProblemSpec] = {}

CATALOG_NAMES = tuple(_FACTORIES)

# The twenty problems of the benchmark tables (17 G-problems plus PV, TC, WBD).
TABLE_PROBLEMS = tuple(G_PROBLEMS) + tuple(DESIGN_PROBLEMS)


def catalog_lookup(name: str) -> ProblemSpec:
    """Return the catalog problem called ``name`` (case-insensitive for G-problems)."""
    key = name.upper() if name.upper() in _FACTORIES else name
    if key not in _FACTORIES:
        raise ProblemLookupError(name, CATALOG_NAMES)
    if key not in _CACHE:
        _CACHE[key] = _FACTORIES[key]()
    return _CACHE[key]


def catalog() -> list[ProblemSpec]:
    return [catalog_lookup(name) for name in CATALOG_NAMES]


__all__ = [
    "CATALOG_NAMES", "TABLE_PROBLEMS", "CoupledVars", "DeepDrawParams", "Features", "ProblemSpec",
    "catalog", "catalog_lookup", "coupled_process_vars", "make_spec", "pressure_vessel",
    "springback_sdm", "tension_spring", "thickening_value", "thinning_value", "welded_beam",
]
