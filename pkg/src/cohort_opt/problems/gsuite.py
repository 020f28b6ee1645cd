"""G-suite constrained benchmarks (CEC 2006 special session definitions).

Formulations, bounds and best-known points are transcribed from Liang et al.,
"Problem Definitions and Evaluation Criteria for the CEC 2006 Special Session
on Constrained Real-Parameter Optimization". Maximization problems (G02, G03,
G08, G12) are stored negated, as in that report.

Feature counts differ from the CEC report for G02, where both inequalities
are classed as nonlinear here.

Where the CEC best point sits exactly on an equality tolerance boundary, the
stored ``known_best_point`` is re-solved with the equalities met to ~1e-10 so
that it is feasible without relying on the tolerance (G05, G14, G15, G17).
Points that miss an inequality by rounding noise (G07, G24) are moved 1e-10
of the way toward an interior point. ``known_best`` is the objective at the
stored point.
"""
from __future__ import annotations

import numpy as np

from .model import Features, make_spec

SOURCE = "CEC 2006 technical report (Liang et al. 2006)"


def _cols(X):
    return np.asarray(X, dtype=float).T


# -- G01 ---------------------------------------------------------------------

def _g01_f(X):
    return 5 * X[:, :4].sum(1) - 5 * (X[:, :4] ** 2).sum(1) - X[:, 4:13].sum(1)


def _g01_g(X):
    x = _cols(X)
    return np.stack([
        2 * x[0] + 2 * x[1] + x[9] + x[10] - 10,
        2 * x[0] + 2 * x[2] + x[9] + x[11] - 10,
        2 * x[1] + 2 * x[2] + x[10] + x[11] - 10,
        -8 * x[0] + x[9],
        -8 * x[1] + x[10],
        -8 * x[2] + x[11],
        -2 * x[3] - x[4] + x[9],
        -2 * x[5] - x[6] + x[10],
        -2 * x[7] - x[8] + x[11],
    ], axis=1)


def g01():
    upper = np.ones(13)
    upper[9:12] = 100.0
    return make_spec(
        "G01", np.zeros(13), upper, _g01_f, Features("Quadratic", li=9), ineq=_g01_g,
        known_best=-15.0,
        known_best_point=[1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3, 3, 1],
        source=SOURCE,
    )


# -- G02 ---------------------------------------------------------------------

def _g02_f(X):
    c = np.cos(X)
    i = np.arange(1, X.shape[1] + 1)
    num = np.abs((c**4).sum(1) - 2 * (c**2).prod(1))
    return -num / np.sqrt((i * X**2).sum(1))


def _g02_g(X):
    n = X.shape[1]
    return np.stack([0.75 - X.prod(1), X.sum(1) - 7.5 * n], axis=1)


def g02():
    return make_spec(
        "G02", np.zeros(20), np.full(20, 10.0), _g02_f, Features("Non-linear", ni=2), ineq=_g02_g,
        known_best=-0.80361910412559,
        known_best_point=[
            3.16246061572185, 3.12833142812967, 3.09479212988791, 3.06145059523469,
            3.02792915885555, 2.99382606701730, 2.95866871765285, 2.92184227312450,
            0.49482511456933, 0.48835711005490, 0.48231642711865, 0.47664475092742,
            0.47129550835493, 0.46623099264167, 0.46142004984199, 0.45683664767217,
            0.45245876903267, 0.44826762241853, 0.44424700958760, 0.44038285956317,
        ],
        source=SOURCE,
    )


# -- G03 ---------------------------------------------------------------------

def _g03_f(X):
    n = X.shape[1]
    return -(np.sqrt(n) ** n) * X.prod(1)


def _g03_h(X):
    return ((X**2).sum(1) - 1.0)[:, None]


def g03():
    n = 10
    return make_spec(
        "G03", np.zeros(n), np.ones(n), _g03_f, Features("Polynomial", ne=1), eq=_g03_h,
        known_best=-1.0,
        known_best_point=np.full(n, 1 / np.sqrt(n)),
        source=SOURCE,
        description="CEC lists -1.0005 using the 1e-4 equality slack; the exact-equality optimum is -1.",
    )


# -- G04 ---------------------------------------------------------------------

def _g04_f(X):
    x = _cols(X)
    return 5.3578547 * x[2] ** 2 + 0.8356891 * x[0] * x[4] + 37.293239 * x[0] - 40792.141


def _g04_g(X):
    x = _cols(X)
    u = 85.334407 + 0.0056858 * x[1] * x[4] + 0.0006262 * x[0] * x[3] - 0.0022053 * x[2] * x[4]
    v = 80.51249 + 0.0071317 * x[1] * x[4] + 0.0029955 * x[0] * x[1] + 0.0021813 * x[2] ** 2
    w = 9.300961 + 0.0047026 * x[2] * x[4] + 0.0012547 * x[0] * x[2] + 0.0019085 * x[2] * x[3]
    return np.stack([u - 92, -u, v - 110, -v + 90, w - 25, -w + 20], axis=1)


def g04():
    return make_spec(
        "G04", [78, 33, 27, 27, 27], [102, 45, 45, 45, 45], _g04_f, Features("Quadratic", ni=6),
        ineq=_g04_g,
        known_best=-30665.538671783,
        known_best_point=[78, 33, 29.995256025682, 45, 36.775812905788],
        source=SOURCE,
    )


# -- G05 ---------------------------------------------------------------------

def _g05_f(X):
    x = _cols(X)
    return 3 * x[0] + 1e-6 * x[0] ** 3 + 2 * x[1] + (2e-6 / 3) * x[1] ** 3


def _g05_g(X):
    x = _cols(X)
    return np.stack([-x[3] + x[2] - 0.55, -x[2] + x[3] - 0.55], axis=1)


def _g05_h(X):
    x = _cols(X)
    return np.stack([
        1000 * np.sin(-x[2] - 0.25) + 1000 * np.sin(-x[3] - 0.25) + 894.8 - x[0],
        1000 * np.sin(x[2] - 0.25) + 1000 * np.sin(x[2] - x[3] - 0.25) + 894.8 - x[1],
        1000 * np.sin(x[3] - 0.25) + 1000 * np.sin(x[3] - x[2] - 0.25) + 1294.8,
    ], axis=1)


def g05():
    return make_spec(
        "G05", [0, 0, -0.55, -0.55], [1200, 1200, 0.55, 0.55], _g05_f, Features("Cubic", li=2, ne=3),
        ineq=_g05_g, eq=_g05_h,
        known_best=5126.498109595272,
        known_best_point=[679.94530834679233, 1026.0671449032557, 0.11887637269697453, -0.39623354930925386],
        source=SOURCE,
    )


# -- G06 ---------------------------------------------------------------------

def _g06_f(X):
    x = _cols(X)
    return (x[0] - 10) ** 3 + (x[1] - 20) ** 3


def _g06_g(X):
    x = _cols(X)
    return np.stack([
        -((x[0] - 5) ** 2) - (x[1] - 5) ** 2 + 100,
        (x[0] - 6) ** 2 + (x[1] - 5) ** 2 - 82.81,
    ], axis=1)


def g06():
    return make_spec(
        "G06", [13, 0], [100, 100], _g06_f, Features("Cubic", ni=2), ineq=_g06_g,
        known_best=-6961.813875580138,
        known_best_point=[14.095, 0.8429607892154796],
        source=SOURCE,
    )


# -- G07 ---------------------------------------------------------------------

def _g07_f(X):
    x = _cols(X)
    return (x[0] ** 2 + x[1] ** 2 + x[0] * x[1] - 14 * x[0] - 16 * x[1] + (x[2] - 10) ** 2
            + 4 * (x[3] - 5) ** 2 + (x[4] - 3) ** 2 + 2 * (x[5] - 1) ** 2 + 5 * x[6] ** 2
            + 7 * (x[7] - 11) ** 2 + 2 * (x[8] - 10) ** 2 + (x[9] - 7) ** 2 + 45)


def _g07_g(X):
    x = _cols(X)
    return np.stack([
        -105 + 4 * x[0] + 5 * x[1] - 3 * x[6] + 9 * x[7],
        10 * x[0] - 8 * x[1] - 17 * x[6] + 2 * x[7],
        -8 * x[0] + 2 * x[1] + 5 * x[8] - 2 * x[9] - 12,
        3 * (x[0] - 2) ** 2 + 4 * (x[1] - 3) ** 2 + 2 * x[2] ** 2 - 7 * x[3] - 120,
        5 * x[0] ** 2 + 8 * x[1] + (x[2] - 6) ** 2 - 2 * x[3] - 40,
        x[0] ** 2 + 2 * (x[1] - 2) ** 2 - 2 * x[0] * x[1] + 14 * x[4] - 6 * x[5],
        0.5 * (x[0] - 8) ** 2 + 2 * (x[1] - 4) ** 2 + 3 * x[4] ** 2 - x[5] - 30,
        -3 * x[0] + 6 * x[1] + 12 * (x[8] - 8) ** 2 - 7 * x[9],
    ], axis=1)


def g07():
    return make_spec(
        "G07", np.full(10, -10.0), np.full(10, 10.0), _g07_f, Features("Quadratic", li=3, ni=5),
        ineq=_g07_g,
        known_best=24.306209068180333,
        known_best_point=[
            2.171996341426919, 2.3636830416033923, 8.773925739131567, 5.0959844374517305,
            0.9906547565604852, 1.430573928534632, 1.3216441536430685, 9.828725765244947,
            8.280091588735585, 8.37592664773471,
        ],
        source=SOURCE,
    )


# -- G08 ---------------------------------------------------------------------

def _g08_f(X):
    x = _cols(X)
    return -(np.sin(2 * np.pi * x[0]) ** 3 * np.sin(2 * np.pi * x[1])) / (x[0] ** 3 * (x[0] + x[1]))


def _g08_g(X):
    x = _cols(X)
    return np.stack([x[0] ** 2 - x[1] + 1, 1 - x[0] + (x[1] - 4) ** 2], axis=1)


def g08():
    return make_spec(
        "G08", [0, 0], [10, 10], _g08_f, Features("Non-linear", ni=2), ineq=_g08_g,
        known_best=-0.095825041418,
        known_best_point=[1.22797135260752599, 4.24537336612274885],
        source=SOURCE,
    )


# -- G09 ---------------------------------------------------------------------

def _g09_f(X):
    x = _cols(X)
    return ((x[0] - 10) ** 2 + 5 * (x[1] - 12) ** 2 + x[2] ** 4 + 3 * (x[3] - 11) ** 2
            + 10 * x[4] ** 6 + 7 * x[5] ** 2 + x[6] ** 4 - 4 * x[5] * x[6] - 10 * x[5] - 8 * x[6])


def _g09_g(X):
    x = _cols(X)
    return np.stack([
        -127 + 2 * x[0] ** 2 + 3 * x[1] ** 4 + x[2] + 4 * x[3] ** 2 + 5 * x[4],
        -282 + 7 * x[0] + 3 * x[1] + 10 * x[2] ** 2 + x[3] - x[4],
        -196 + 23 * x[0] + x[1] ** 2 + 6 * x[5] ** 2 - 8 * x[6],
        4 * x[0] ** 2 + x[1] ** 2 - 3 * x[0] * x[1] + 2 * x[2] ** 2 + 5 * x[5] - 11 * x[6],
    ], axis=1)


def g09():
    return make_spec(
        "G09", np.full(7, -10.0), np.full(7, 10.0), _g09_f, Features("Polynomial", ni=4), ineq=_g09_g,
        known_best=680.6300573744021,
        known_best_point=[
            2.33049935147405174, 1.95137236847114592, -0.477541399510615805, 4.36572624923625874,
            -0.624486959100388983, 1.03813099410962173, 1.5942266780671519,
        ],
        source=SOURCE,
    )


# -- G10 ---------------------------------------------------------------------

def _g10_f(X):
    return X[:, 0] + X[:, 1] + X[:, 2]


def _g10_g(X):
    x = _cols(X)
    return np.stack([
        -1 + 0.0025 * (x[3] + x[5]),
        -1 + 0.0025 * (x[4] + x[6] - x[3]),
        -1 + 0.01 * (x[7] - x[4]),
        -x[0] * x[5] + 833.33252 * x[3] + 100 * x[0] - 83333.333,
        -x[1] * x[6] + 1250 * x[4] + x[1] * x[3] - 1250 * x[3],
        -x[2] * x[7] + 1250000 + x[2] * x[4] - 2500 * x[4],
    ], axis=1)


def g10():
    return make_spec(
        "G10", [100, 1000, 1000, 10, 10, 10, 10, 10], [10000, 10000, 10000, 1000, 1000, 1000, 1000, 1000],
        _g10_f, Features("Linear", li=3, ni=3), ineq=_g10_g,
        known_best=7049.248020528668,
        known_best_point=[
            579.306685017979589, 1359.97067807935605, 5109.97065743133317, 182.01769963061534,
            295.601173702746792, 217.982300369384632, 286.41652592786852, 395.60117370274673,
        ],
        source=SOURCE,
    )


# -- G11 ---------------------------------------------------------------------

def _g11_f(X):
    return X[:, 0] ** 2 + (X[:, 1] - 1) ** 2


def _g11_h(X):
    return (X[:, 1] - X[:, 0] ** 2)[:, None]


def g11():
    return make_spec(
        "G11", [-1, -1], [1, 1], _g11_f, Features("Quadratic", ne=1), eq=_g11_h,
        known_best=0.75,
        known_best_point=[-np.sqrt(0.5), 0.5],
        source=SOURCE,
        description="CEC lists 0.7499 using the 1e-4 equality slack; the exact-equality optimum is 0.75.",
    )


# -- G12 ---------------------------------------------------------------------

def _g12_f(X):
    return -(100 - ((X - 5) ** 2).sum(1)) / 100


def _g12_g(X):
    # Feasible inside any of the 9**3 spheres of radius 0.25 centred on
    # (p, q, r), p, q, r in 1..9. The squared distance is separable, so the
    # nearest centre is the per-coordinate nearest integer in [1, 9].
    centre = np.clip(np.rint(X), 1, 9)
    return (((X - centre) ** 2).sum(1) - 0.0625)[:, None]


def g12():
    return make_spec(
        "G12", [0, 0, 0], [10, 10, 10], _g12_f, Features("Quadratic", ni=1), ineq=_g12_g,
        known_best=-1.0,
        known_best_point=[5, 5, 5],
        source=SOURCE,
        description="The 729 sphere constraints are disjunctive and evaluated as one nearest-sphere constraint.",
    )


# -- G14 ---------------------------------------------------------------------

_G14_C = np.array([-6.089, -17.164, -34.054, -5.914, -24.721, -14.986, -24.1, -10.708, -26.662, -22.179])


def _g14_f(X):
    s = X.sum(1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(X > 0, X * (_G14_C + np.log(X / s)), 0.0)
    return terms.sum(1)


def _g14_h(X):
    x = _cols(X)
    return np.stack([
        x[0] + 2 * x[1] + 2 * x[2] + x[5] + x[9] - 2,
        x[3] + 2 * x[4] + x[5] + x[6] - 1,
        x[2] + x[6] + x[7] + 2 * x[8] + x[9] - 1,
    ], axis=1)


def g14():
    return make_spec(
        "G14", np.zeros(10), np.full(10, 10.0), _g14_f, Features("Non-linear", le=3), eq=_g14_h,
        known_best=-47.76109085936578,
        known_best_point=[
            0.040668059827374883, 0.14773032960036300, 0.78315340424217206, 0.0014142111847390167,
            0.48524666138226968, 0.00069316449538457377, 0.027399301555336954, 0.017947272482954572,
            0.037314356863682972, 0.096871307992170474,
        ],
        source=SOURCE,
    )


# -- G15 ---------------------------------------------------------------------

def _g15_f(X):
    x = _cols(X)
    return 1000 - x[0] ** 2 - 2 * x[1] ** 2 - x[2] ** 2 - x[0] * x[1] - x[0] * x[2]


def _g15_h(X):
    x = _cols(X)
    return np.stack([
        x[0] ** 2 + x[1] ** 2 + x[2] ** 2 - 25,
        8 * x[0] + 14 * x[1] + 7 * x[2] - 56,
    ], axis=1)


def g15():
    return make_spec(
        "G15", np.zeros(3), np.full(3, 10.0), _g15_f, Features("Quadratic", le=1, ne=1), eq=_g15_h,
        known_best=961.7151721300522,
        known_best_point=[3.5121217727197123, 0.21698790726568945, 3.5521707309318065],
        source=SOURCE,
    )


# -- G17 ---------------------------------------------------------------------

def _g17_f(X):
    x = _cols(X)
    f1 = np.where(x[0] < 300, 30 * x[0], 31 * x[0])
    f2 = np.where(x[1] < 100, 28 * x[1], np.where(x[1] < 200, 29 * x[1], 30 * x[1]))
    return f1 + f2


def _g17_h(X):
    x = _cols(X)
    a = x[2] * x[3] / 131.078
    return np.stack([
        -x[0] + 300 - a * np.cos(1.48477 - x[5]) + 0.90798 * x[2] ** 2 / 131.078 * np.cos(1.47588),
        -x[1] - a * np.cos(1.48477 + x[5]) + 0.90798 * x[3] ** 2 / 131.078 * np.cos(1.47588),
        -x[4] - a * np.sin(1.48477 + x[5]) + 0.90798 * x[3] ** 2 / 131.078 * np.sin(1.47588),
        200 - a * np.sin(1.48477 - x[5]) + 0.90798 * x[2] ** 2 / 131.078 * np.sin(1.47588),
    ], axis=1)


def g17():
    return make_spec(
        "G17", [0, 0, 340, 340, -1000, 0], [400, 1000, 420, 420, 1000, 0.5236], _g17_f,
        Features("Non-linear", ne=4), eq=_g17_h,
        known_best=8853.53989135226,
        known_best_point=[
            201.78466305898601, 99.999999985095712, 383.07099527404995, 420.0,
            -10.907605632734985, 0.073148148388234122,
        ],
        source=SOURCE,
    )


# -- G18 ---------------------------------------------------------------------

def _g18_f(X):
    x = _cols(X)
    return -0.5 * (x[0] * x[3] - x[1] * x[2] + x[2] * x[8] - x[4] * x[8] + x[4] * x[7] - x[5] * x[6])


def _g18_g(X):
    x = _cols(X)
    return np.stack([
        x[2] ** 2 + x[3] ** 2 - 1,
        x[8] ** 2 - 1,
        x[4] ** 2 + x[5] ** 2 - 1,
        x[0] ** 2 + (x[1] - x[8]) ** 2 - 1,
        (x[0] - x[4]) ** 2 + (x[1] - x[5]) ** 2 - 1,
        (x[0] - x[6]) ** 2 + (x[1] - x[7]) ** 2 - 1,
        (x[2] - x[4]) ** 2 + (x[3] - x[5]) ** 2 - 1,
        (x[2] - x[6]) ** 2 + (x[3] - x[7]) ** 2 - 1,
        x[6] ** 2 + (x[7] - x[8]) ** 2 - 1,
        x[1] * x[2] - x[0] * x[3],
        -x[2] * x[8],
        x[4] * x[8],
        x[5] * x[6] - x[4] * x[7],
    ], axis=1)


def g18():
    return make_spec(
        "G18", [-10] * 8 + [0], [10] * 8 + [20], _g18_f, Features("Quadratic", ni=13), ineq=_g18_g,
        known_best=-0.8660254037844387,
        known_best_point=[
            -0.657776192427943163, -0.153418773482438542, 0.323413871675240938, -0.946257611651304398,
            -0.657776194376798906, -0.753213434632691414, 0.323413874123576972, -0.346462947962331735,
            0.59979466285217542,
        ],
        source=SOURCE,
    )


# -- G24 ---------------------------------------------------------------------

def _g24_f(X):
    return -X[:, 0] - X[:, 1]


def _g24_g(X):
    x1, x2 = X[:, 0], X[:, 1]
    return np.stack([
        -2 * x1**4 + 8 * x1**3 - 8 * x1**2 + x2 - 2,
        -4 * x1**4 + 32 * x1**3 - 88 * x1**2 + 96 * x1 + x2 - 36,
    ], axis=1)


def g24():
    return make_spec(
        "G24", [0, 0], [3, 4], _g24_f, Features("Linear", ni=2), ineq=_g24_g,
        known_best=-5.5080132715943595,
        known_best_point=[2.32952019747762, 3.17849307411674],
        source=SOURCE,
    )


G_PROBLEMS = {
    "G01": g01, "G02": g02, "G03": g03, "G04": g04, "G05": g05, "G06": g06,
    "G07": g07, "G08": g08, "G09": g09, "G10": g10, "G11": g11, "G12": g12,
    "G14": g14, "G15": g15, "G17": g17, "G18": g18, "G24": g24,
}
