"""Mechanical design benchmarks: pressure vessel, spring, welded beam.

Formulations follow the versions used by Mezura-Montes & Coello and by
Coello (2000) for the welded beam.
"""
from __future__ import annotations

import numpy as np

from .model import Features, make_spec

THICKNESS_STEP = 0.0625


# -- pressure vessel ---------------------------------------------------------
# x = (Ts, Th, R, L): shell thickness, head thickness, inner radius, length.

def _pv_f(X):
    ts, th, r, length = X.T
    return 0.6224 * ts * r * length + 1.7781 * th * r**2 + 3.1661 * ts**2 * length + 19.84 * ts**2 * r


def _pv_g(X):
    ts, th, r, length = X.T
    return np.stack([
        -ts + 0.0193 * r,
        -th + 0.00954 * r,
        -np.pi * r**2 * length - 4.0 / 3.0 * np.pi * r**3 + 1296000.0,
        length - 240.0,
    ], axis=1)


def _snap_thickness(X):
    X = np.array(X, dtype=float)
    X[:, :2] = np.ceil(X[:, :2] / THICKNESS_STEP - 1e-9) * THICKNESS_STEP
    return X


def pressure_vessel(discrete: bool = False):
    """Pressure vessel design.

    The default treats both thicknesses as continuous. With ``discrete=True``
    thicknesses are rounded up to multiples of 0.0625 in before evaluation,
    which is the classical statement of the problem (best known 6059.714).
    """
    if discrete:
        return make_spec(
            "PV-discrete", [0.0625, 0.0625, 10, 10], [99 * 0.0625, 99 * 0.0625, 200, 200],
            lambda X: _pv_f(_snap_thickness(X)), Features("Polynomial", li=3, ni=1),
            ineq=lambda X: _pv_g(_snap_thickness(X)),
            known_best=6059.714335057693,
            known_best_point=[0.8125, 0.4375, 42.09844559581282, 176.63659584313774],
            source="Kannan & Kramer (1994); thickness in multiples of 0.0625",
        )
    return make_spec(
        "PV", [0, 0, 10, 10], [99, 99, 200, 200], _pv_f, Features("Polynomial", li=3, ni=1),
        ineq=_pv_g,
        known_best=5885.332773629827,
        known_best_point=[0.7781686413758836, 0.38464916262828647, 40.31961872413904, 200.0],
        source="Kannan & Kramer (1994), continuous thickness variant",
    )


# -- tension/compression spring -----------------------------------------------
# x = (d, D, N): wire diameter, mean coil diameter, number of active coils.

def _tc_f(X):
    d, D, N = X.T
    return (N + 2) * D * d**2


def _tc_g(X):
    d, D, N = X.T
    return np.stack([
        1 - D**3 * N / (71785 * d**4),
        (4 * D**2 - d * D) / (12566 * (D * d**3 - d**4)) + 1 / (5108 * d**2) - 1,
        1 - 140.45 * d / (D**2 * N),
        (D + d) / 1.5 - 1,
    ], axis=1)


def tension_spring():
    return make_spec(
        "TC", [0.05, 0.25, 2.0], [2.0, 1.3, 15.0], _tc_f, Features("Polynomial", li=1, ni=3),
        ineq=_tc_g,
        known_best=0.012665232788390495,
        known_best_point=[0.05168906050024179, 0.3567177257852197, 11.288966573292079],
        source="Arora (2004); Belegundu (1982)",
    )


# -- welded beam ---------------------------------------------------------------
# x = (h, l, t, b): weld thickness, weld length, bar height, bar thickness.

WB_P = 6000.0
WB_L = 14.0
WB_E = 30e6
WB_G = 12e6
WB_TAU_MAX = 13600.0
WB_SIGMA_MAX = 30000.0
WB_DELTA_MAX = 0.25


def _wb_f(X):
    h, l, t, b = X.T
    return 1.10471 * h**2 * l + 0.04811 * t * b * (14.0 + l)


def _wb_g(X):
    h, l, t, b = X.T
    tau_p = WB_P / (np.sqrt(2) * h * l)
    M = WB_P * (WB_L + l / 2)
    R = np.sqrt(l**2 / 4 + ((h + t) / 2) ** 2)
    J = 2 * (np.sqrt(2) * h * l * (l**2 / 12 + ((h + t) / 2) ** 2))
    tau_pp = M * R / J
    tau = np.sqrt(tau_p**2 + 2 * tau_p * tau_pp * l / (2 * R) + tau_pp**2)
    sigma = 6 * WB_P * WB_L / (b * t**2)
    delta = 4 * WB_P * WB_L**3 / (WB_E * t**3 * b)
    pc = (4.013 * WB_E * np.sqrt(t**2 * b**6 / 36) / WB_L**2
          * (1 - t / (2 * WB_L) * np.sqrt(WB_E / (4 * WB_G))))
    return np.stack([
        tau - WB_TAU_MAX,
        sigma - WB_SIGMA_MAX,
        h - b,
        0.10471 * h**2 + 0.04811 * t * b * (14.0 + l) - 5.0,
        0.125 - h,
        delta - WB_DELTA_MAX,
        WB_P - pc,
    ], axis=1)


def welded_beam():
    return make_spec(
        "WBD", [0.1, 0.1, 0.1, 0.1], [2.0, 10.0, 10.0, 2.0], _wb_f, Features("Non-linear", li=2, ni=5),
        ineq=_wb_g,
        known_best=1.7483094061431044,
        known_best_point=[0.2088, 3.4205, 8.9975, 0.21],
        source="Coello (2000)",
        description=(
            "known_best is the widely quoted 1.748309 design of Coello (2000); "
            "the same formulation admits 1.724852 at (0.20573, 3.47049, 9.03662, 0.20573)."
        ),
    )


DESIGN_PROBLEMS = {"PV": pressure_vessel, "TC": tension_spring, "WBD": welded_beam}
