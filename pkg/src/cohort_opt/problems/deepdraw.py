"""Deep-drawing response-surface problems (springback, thinning, thickening).

Each problem optimizes the process variables ``x = (BHF, mu, R_D, R_P)``
directly:

* ``BHF`` blank-holder force in **kN** (the response-surface coefficients are
  fitted in kN even though the nomenclature lists N),
* ``mu`` friction coefficient,
* ``R_D`` die corner radius and ``R_P`` punch corner radius in mm,

subject to ``3 R_D <= R_P <= 6 R_D``. ``BHF`` may move +-20 % around the
original component's value; ``mu`` spans 0.005-0.15; ``R_D`` uses each
problem's bracket.

:func:`coupled_process_vars` maps the geometric parameters
``(d0, d1, z, S0, P)`` onto ``BHF`` and ``R_D`` for callers who want to work
with geometry bounds instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError
from .model import Features, make_spec

PRESSURE = 2.5  # N/mm^2
MU_RANGE = (0.005, 0.15)
BHF_SPAN = 0.2
RP_RATIO = (3.0, 6.0)


def springback_sdm(bhf, mu, r_d, r_p):
    """Springback displacement magnitude in mm (``bhf`` in kN)."""
    return 0.0488 - 0.000133 * bhf - 0.0167 * mu + 0.00150 * r_d + 0.00217 * r_p


def thinning_value(bhf, mu, r_d, r_p):
    """Remaining wall thickness of the connector in mm (``bhf`` in kN)."""
    return 1.35 - 0.0400 * bhf - 0.733 * mu - 0.0300 * r_d - 0.0183 * r_p


def thickening_value(bhf, mu, r_d, r_p):
    """Wall thickness of the tail cap in mm (``bhf`` in kN). ``r_p`` has no effect."""
    return 1.278 + 0.00180 * bhf + 0.043 * mu - 0.0167 * r_d - 0.0 * r_p


@dataclass(frozen=True)
class DeepDrawParams:
    d0: float  # blank diameter, mm
    d1: float  # finished component diameter, mm
    z: float  # corner radius, mm
    mu: float
    S0: float  # sheet thickness, mm
    P: float = PRESSURE  # N/mm^2

    def __post_init__(self):
        for name in ("d0", "d1", "z", "S0", "P"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be > 0, got {getattr(self, name)}")
        if not 0 < self.mu < 1:
            raise ConfigurationError(f"mu must lie in (0, 1), got {self.mu}")


@dataclass(frozen=True)
class CoupledVars:
    bhf: float  # kN
    r_d: float  # mm
    r_p_min: float
    r_p_max: float


def blank_holder_force(d0, z, P=PRESSURE):
    """``pi/4 (d0^2 + 2z)^2 P`` in N, returned in kN."""
    return math.pi / 4 * (d0**2 + 2 * z) ** 2 * P / 1000.0


def die_radius(d0, d1, S0):
    return 0.035 * (50 + (d0 - d1) * math.sqrt(S0))


def coupled_process_vars(p) -> CoupledVars:
    """BHF, R_D and the admissible R_P range implied by the component geometry.

    Accepts :class:`DeepDrawParams` or any object with the same attributes
    (zero-valued geometry is allowed here, which is handy for limits).
    """
    bhf = blank_holder_force(p.d0, p.z, p.P)
    r_d = die_radius(p.d0, p.d1, p.S0)
    return CoupledVars(bhf, r_d, RP_RATIO[0] * r_d, RP_RATIO[1] * r_d)


def radius_bracket_violation(r_d, bracket) -> float:
    """Distance of ``r_d`` outside its problem bracket (0 when inside)."""
    lo, hi = bracket
    return max(0.0, lo - r_d, r_d - hi)


def _ratio_constraints(X):
    r_d, r_p = X[:, 2], X[:, 3]
    return np.stack([RP_RATIO[0] * r_d - r_p, r_p - RP_RATIO[1] * r_d], axis=1)


def _make(name, response, original, r_d_bracket, *, maximize, known_best, known_best_point, description):
    bhf0 = original["BHF"]
    lower = [bhf0 * (1 - BHF_SPAN), MU_RANGE[0], r_d_bracket[0], RP_RATIO[0] * r_d_bracket[0]]
    upper = [bhf0 * (1 + BHF_SPAN), MU_RANGE[1], r_d_bracket[1], RP_RATIO[1] * r_d_bracket[1]]
    sign = -1.0 if maximize else 1.0

    def objective(X):
        return sign * response(X[:, 0], X[:, 1], X[:, 2], X[:, 3])

    return make_spec(
        name, lower, upper, objective, Features("Linear", li=2), ineq=_ratio_constraints,
        known_best=known_best, known_best_point=known_best_point,
        source="Kakandikar (2014) response surfaces",
        description=description,
        extra={"original": original, "maximize": maximize, "r_d_bracket": r_d_bracket},
    )


def springback():
    return _make(
        "springback", springback_sdm,
        {"value": 0.07420, "BHF": 16.931, "mu": 0.15, "R_D": 2.886, "R_P": 14.38111},
        (2.5, 8.0),
        maximize=False,
        known_best=0.0636178124,
        known_best_point=[20.3172, 0.15, 2.5, 7.5],
        description="Minimize springback displacement magnitude of an automotive punch plate (mm).",
    )


def thinning():
    return _make(
        "thinning", thinning_value,
        {"value": 0.896, "BHF": 3.89, "mu": 0.15, "R_D": 2.52, "R_P": 6.16},
        (2.0, 4.0),
        maximize=True,
        known_best=-1.052055,
        known_best_point=[3.112, 0.005, 2.0, 6.0],
        description=(
            "Connector thinning: maximize the remaining thickness (stored negated). "
            "The source problem is titled a minimization but reports thickness gains as improvements."
        ),
    )


def thickening():
    return _make(
        "thickening", thickening_value,
        {"value": 1.309, "BHF": 21.99, "mu": 0.15, "R_D": 3.83, "R_P": 17.1},
        (2.0, 4.0),
        maximize=False,
        known_best=1.2430806,
        known_best_point=[17.592, 0.005, 4.0, 12.0],
        description="Minimize tail-cap wall thickening (mm). R_P does not enter the response.",
    )


DEEPDRAW_PROBLEMS = {"springback": springback, "thinning": thinning, "thickening": thickening}
