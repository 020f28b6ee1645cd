import json
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from cohort_opt.errors import ConfigurationError, ProblemLookupError
from cohort_opt.problems import (
    CATALOG_NAMES,
    TABLE_PROBLEMS,
    DeepDrawParams,
    Features,
    catalog,
    catalog_lookup,
    coupled_process_vars,
    make_spec,
    pressure_vessel,
    springback_sdm,
    thickening_value,
    thinning_value,
)
from cohort_opt.problems.deepdraw import blank_holder_force, die_radius, radius_bracket_violation

from oracles import deepdraw_lp, vertex_enumeration

# name, dimension, type, LI, NI, LE, NE
FEATURE_TABLE = [
    ("G01", 13, "Quadratic", 9, 0, 0, 0),
    ("G02", 20, "Non-linear", 0, 2, 0, 0),
    ("G03", 10, "Polynomial", 0, 0, 0, 1),
    ("G04", 5, "Quadratic", 0, 6, 0, 0),
    ("G05", 4, "Cubic", 2, 0, 0, 3),
    ("G06", 2, "Cubic", 0, 2, 0, 0),
    ("G07", 10, "Quadratic", 3, 5, 0, 0),
    ("G08", 2, "Non-linear", 0, 2, 0, 0),
    ("G09", 7, "Polynomial", 0, 4, 0, 0),
    ("G10", 8, "Linear", 3, 3, 0, 0),
    ("G11", 2, "Quadratic", 0, 0, 0, 1),
    ("G12", 3, "Quadratic", 0, 1, 0, 0),
    ("G14", 10, "Non-linear", 0, 0, 3, 0),
    ("G15", 3, "Quadratic", 0, 0, 1, 1),
    ("G17", 6, "Non-linear", 0, 0, 0, 4),
    ("G18", 9, "Quadratic", 0, 13, 0, 0),
    ("G24", 2, "Linear", 0, 2, 0, 0),
]

# Published optima (magnitudes; several signs are misprinted in the source table).
PUBLISHED_OPTIMUM = {
    "G01": -15.000, "G02": -0.803619, "G03": -1.000, "G04": -30665.539, "G05": 5126.498, "G06": -6961.814,
    "G07": 24.306, "G08": -0.095825, "G09": 680.63, "G10": 7049.25, "G11": 0.75, "G12": -1.000,
    "G14": -47.7649, "G15": 961.7150, "G18": -0.8660, "G24": -5.5080,
}


@pytest.mark.parametrize("name,dim,kind,li,ni,le,ne", FEATURE_TABLE)
def test_feature_counts(name, dim, kind, li, ni, le, ne):
    spec = catalog_lookup(name)
    assert spec.dimension == dim
    assert spec.features == Features(kind, li, ni, le, ne)
    G, H = spec.constraints.evaluate(np.tile((spec.lower + spec.upper) / 2, (3, 1)))
    assert G.shape == (3, li + ni) and H.shape == (3, le + ne)


def test_catalog_contents():
    assert len(CATALOG_NAMES) == 23
    assert len(TABLE_PROBLEMS) == 20
    assert [s.name for s in catalog()] == list(CATALOG_NAMES)
    eq_problems = {s.name for s in catalog() if s.features.n_eq}
    assert eq_problems == {"G03", "G05", "G11", "G14", "G15", "G17"}


def test_lookup_is_case_insensitive_for_g_names():
    assert catalog_lookup("g24") is catalog_lookup("G24")


def test_unknown_name_lists_valid_names():
    with pytest.raises(ProblemLookupError) as err:
        catalog_lookup("G13")
    assert "G24" in str(err.value) and "springback" in str(err.value)
    assert isinstance(err.value, KeyError)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_known_point_is_feasible_and_matches_known_best(name):
    spec = catalog_lookup(name)
    f, report = spec.evaluate(spec.known_best_point)
    assert bool(report.feasible)
    assert f == pytest.approx(spec.known_best, rel=1e-9, abs=1e-12)
    assert np.all(spec.known_best_point >= spec.lower) and np.all(spec.known_best_point <= spec.upper)


@pytest.mark.parametrize("name", sorted(PUBLISHED_OPTIMUM))
def test_known_best_agrees_with_published_optimum(name):
    spec = catalog_lookup(name)
    # published equality optima sit on |h| = 1e-4; stored points satisfy h = 0 exactly
    rel = 1e-4 if spec.features.n_eq else 2e-5
    assert spec.known_best == pytest.approx(PUBLISHED_OPTIMUM[name], rel=rel, abs=5e-5)


def test_describe_is_json_ready():
    doc = catalog_lookup("G05").describe()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["features"] == {"LI": 2, "NI": 0, "LE": 0, "NE": 3}
    assert doc["dimension"] == 4 and len(doc["bounds"]) == 4


def test_g12_uses_nearest_sphere():
    spec = catalog_lookup("G12")
    # centre of sphere (5, 5, 5) is feasible, a point between spheres is not
    assert bool(spec.evaluate([5, 5, 5])[1].feasible)
    assert not bool(spec.evaluate([5.5, 5.5, 5.5])[1].feasible)


def test_bounds_are_validated():
    with pytest.raises(ConfigurationError):
        make_spec("bad", [1.0], [0.0], lambda X: X[:, 0], Features("Linear"))
    with pytest.raises(ConfigurationError):
        make_spec("bad", [0.0], [np.inf], lambda X: X[:, 0], Features("Linear"))
    with pytest.raises(ConfigurationError):
        make_spec("bad", [0.0], [1.0], lambda X: X[:, 0], Features("Linear", li=1))


# -- design problems -------------------------------------------------------------

def test_pressure_vessel_variants():
    cont, disc = catalog_lookup("PV"), pressure_vessel(discrete=True)
    assert cont.known_best < 6000 < disc.known_best
    assert disc.known_best == pytest.approx(6059.714, abs=1e-3)
    # thickness 0.8 is rounded up to 0.8125 before evaluation
    a = disc.evaluate([0.8, 0.4375, 42.09844559581282, 176.63659584313774])[0]
    assert a == pytest.approx(disc.known_best, rel=1e-12)


def test_welded_beam_reference_designs():
    spec = catalog_lookup("WBD")
    f, report = spec.evaluate([0.20573, 3.47049, 9.03662, 0.20573])
    assert f == pytest.approx(1.724852, abs=1e-5)
    assert report.total < 1e-2


# -- deep drawing ---------------------------------------------------------------

@pytest.mark.parametrize("name", ["springback", "thinning", "thickening"])
def test_vertex_oracle_matches_frozen_optimum(name):
    spec = catalog_lookup(name)
    value, x = vertex_enumeration(*deepdraw_lp(spec), spec.lower, spec.upper)
    assert value == pytest.approx(spec.known_best, abs=1e-9)
    assert np.allclose(x, spec.known_best_point)


def test_deepdraw_lp_probe_recovers_objective():
    spec = catalog_lookup("thickening")
    c, c0, _, _ = deepdraw_lp(spec)
    x = np.array([20.0, 0.1, 3.0, 12.0])
    assert c @ x + c0 == pytest.approx(spec.objective(x[None, :])[0])


# Printed response values and the formula's value at the printed design.
# Nonzero residuals are mismatches in the source tables, pinned here so any change shows up.
RESPONSE_ROWS = [
    (springback_sdm, (16.931, 0.15, 2.886, 14.38111), 0.07420, 0.0795792),
    (springback_sdm, (16.961, 0.1449, 2.8490, 8.5474), 0.06698, 0.066945715),
    (springback_sdm, (17.42, 0.14, 2.858, 8.6049), 0.06466, 0.067104773),
    (thinning_value, (4.01, 0.005, 2.50, 9.17), 0.943, 0.943124),
    (thinning_value, (4.25, 0.005, 2.50, 9.17), 0.969, 0.933524),
    (thickening_value, (21.99, 0.15, 3.83, 17.1), 1.309, 1.260071),
    (thickening_value, (23.67, 0.005, 3.9, 17.3), 1.276, 1.255691),
    (thickening_value, (23.23, 0.005, 3.85, 17.3), 1.268, 1.255734),
]


@pytest.mark.parametrize("fn,design,printed,computed", RESPONSE_ROWS)
def test_response_surfaces_at_printed_designs(fn, design, printed, computed):
    assert fn(*design) == pytest.approx(computed, abs=5e-7)


def test_springback_best_beats_original_component():
    spec = catalog_lookup("springback")
    assert spec.known_best <= spec.extra["original"]["value"]


def test_thinning_is_stored_negated():
    spec = catalog_lookup("thinning")
    x = np.array([[4.0, 0.01, 2.5, 9.0]])
    assert spec.objective(x)[0] == pytest.approx(-thinning_value(*x[0]))
    assert spec.extra["maximize"]


def test_ratio_constraints():
    spec = catalog_lookup("springback")
    assert bool(spec.evaluate([17.0, 0.1, 3.0, 12.0])[1].feasible)
    assert not bool(spec.evaluate([17.0, 0.1, 3.0, 8.5])[1].feasible)
    assert not bool(spec.evaluate([17.0, 0.1, 2.5, 15.5])[1].feasible)


def test_coupled_process_vars_formulas():
    p = DeepDrawParams(d0=2.0, d1=1.0, z=0.5, mu=0.15, S0=1.0)
    cv = coupled_process_vars(p)
    assert cv.bhf == pytest.approx(math.pi / 4 * 25 * 2.5 / 1000)
    assert cv.r_d == pytest.approx(0.035 * 51)
    assert (cv.r_p_min, cv.r_p_max) == pytest.approx((3 * cv.r_d, 6 * cv.r_d))


@pytest.mark.parametrize("target_bhf,target_rd", [(16.931, 2.886), (3.89, 2.52), (21.99, 3.83)])
def test_coupled_process_vars_inverts_numerically(target_bhf, target_rd):
    z, S0, d1 = 2.0, 1.0, 50.0
    d0 = brentq(lambda d: blank_holder_force(d, z) - target_bhf, 1e-6, 1e3)
    assert blank_holder_force(d0, z) == pytest.approx(target_bhf, rel=1e-10)
    d0_rd = brentq(lambda d: die_radius(d, d1, S0) - target_rd, d1 - 1e3, d1 + 1e3)
    cv = coupled_process_vars(DeepDrawParams(d0=d0_rd, d1=d1, z=z, mu=0.1, S0=S0))
    assert cv.r_d == pytest.approx(target_rd, rel=1e-10)


def test_radius_bracket_violation():
    assert radius_bracket_violation(3.0, (2.0, 4.0)) == 0.0
    assert radius_bracket_violation(1.5, (2.0, 4.0)) == pytest.approx(0.5)
    assert radius_bracket_violation(4.25, (2.0, 4.0)) == pytest.approx(0.25)


@pytest.mark.parametrize("kwargs", [{"d0": 0}, {"S0": -1}, {"mu": 1.5}])
def test_deepdraw_params_validation(kwargs):
    base = dict(d0=2.0, d1=1.0, z=0.5, mu=0.15, S0=1.0)
    with pytest.raises(ConfigurationError):
        DeepDrawParams(**{**base, **kwargs})
