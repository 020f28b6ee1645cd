import csv
import json
from dataclasses import replace

import numpy as np
import pytest

from cohort_opt.engine import TRACE_COLUMNS, EngineConfig, RunRecord
from cohort_opt.errors import CohortOptError, ConfigurationError
from cohort_opt.harness import (
    REPORT_COLUMNS,
    ExperimentConfig,
    ExperimentReport,
    aggregate,
    default_out_dir,
    export,
    preliminary_trials,
    read_report_csv,
    rows_from_json,
    run_experiment,
)
from cohort_opt.penalty import PenaltyScheme

from oracles import two_pass_sd

FAST = EngineConfig(max_attempts=60, samples=2)


def record(best_f, *, converged=True, feasible=True, fe=100, wall=0.01, problem="P", scheme="SCI"):
    return RunRecord(
        problem=problem, scheme=scheme, seed=0, best_x=np.zeros(2), best_f=best_f, best_fq=best_f,
        violation=0.0 if feasible else 1.0, equality_violation=0.0, feasible=feasible, fe=fe, attempts=1,
        saturations=int(converged), converged=converged, wall_time=wall, trace=np.zeros((0, 5)),
        fe_history=np.zeros(0, int), best_history=np.zeros(0),
    )


# -- aggregate -------------------------------------------------------------------

def test_aggregate_hand_arithmetic():
    row = aggregate([record(1.0), record(2.0), record(3.0)])
    assert row["mean"] == 2.0 and row["best"] == 1.0 and row["worst"] == 3.0
    assert row["sd"] == pytest.approx(0.816496580927726, abs=1e-12)
    assert aggregate([record(-15.0), record(-14.99)])["mean"] == pytest.approx(-14.995)
    assert aggregate([record(4.2)] * 7)["sd"] == 0.0


def test_single_run_has_zero_sd():
    row = aggregate([record(-5.5)])
    assert row["best"] == row["mean"] == row["worst"] == -5.5 and row["sd"] == 0.0


def test_dnc_and_infeasible_runs_are_excluded_from_statistics():
    recs = [record(1.0), record(-100.0, converged=False), record(-50.0, feasible=False), record(3.0)]
    row = aggregate(recs)
    assert (row["best"], row["mean"], row["worst"]) == (1.0, 2.0, 3.0)
    assert row["dnc"] == 1 and row["feas_rate"] == 0.75


def test_all_dnc_row_has_absent_statistics():
    row = aggregate([record(1.0, converged=False)] * 4)
    assert all(row[k] is None for k in ("best", "mean", "sd", "worst"))
    assert row["dnc"] == 4


def test_mean_fe_and_time_are_plain_averages():
    row = aggregate([record(1.0, fe=100, wall=0.002), record(2.0, fe=300, wall=0.004)])
    assert row["mean_fe"] == 200.0 and row["mean_time_ms"] == pytest.approx(3.0)


def test_aggregate_rejects_empty_or_mixed():
    with pytest.raises(ConfigurationError):
        aggregate([])
    with pytest.raises(ConfigurationError):
        aggregate([record(1.0), record(1.0, problem="Q")])


def test_sd_matches_two_pass_computation():
    rng = np.random.default_rng(0)
    values = rng.normal(-30665, 20, 20)
    row = aggregate([record(float(v)) for v in values])
    assert abs(row["sd"] - two_pass_sd(values)) <= 1e-12 * max(1.0, row["sd"])
    assert row["best"] <= row["mean"] <= row["worst"]


# -- config ----------------------------------------------------------------------

def test_config_round_trip():
    cfg = ExperimentConfig(problems=("G24", "TC"), scheme=PenaltyScheme.dynamic(5.0), engine=FAST, runs=3,
                           base_seed=7, scheme_overrides={"TC": {"S": 50.0}})
    again = ExperimentConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
    assert again == cfg
    assert again.scheme_for("TC").S == 50.0 and again.scheme_for("G24").S == 5.0


def test_config_errors_are_listed_together():
    doc = {"problems": ["G24", "G99"], "runs": 0, "jobs": 0, "engine": {"reduction": 2, "colour": 1},
           "scheme": {"kind": "static", "alpha": 2}, "extra": True}
    with pytest.raises(ConfigurationError) as err:
        ExperimentConfig.from_dict(doc)
    msg = str(err.value)
    for fragment in ("G99", "runs", "jobs", "reduction", "colour", "alpha", "extra"):
        assert fragment in msg


def test_invalid_config_aborts_before_any_run(monkeypatch):
    import cohort_opt.harness as harness

    monkeypatch.setattr(harness, "run", lambda *a, **k: pytest.fail("a run started"))
    with pytest.raises(ConfigurationError):
        run_experiment(ExperimentConfig(problems=("G24", "nope"), runs=2))


def test_load_reports_path(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigurationError, match="bad.json"):
        ExperimentConfig.load(bad)


# -- experiments -----------------------------------------------------------------

def test_replicate_seeds_follow_base_seed():
    rep = run_experiment(ExperimentConfig(problems=("G24",), engine=FAST, runs=3, base_seed=40))
    assert [r.seed for r in rep.records] == [40, 41, 42]


def test_sphere_runs_are_feasible_and_reach_the_origin(monkeypatch):
    from cohort_opt.problems import Features, make_spec
    import cohort_opt.harness as harness

    sphere = make_spec("sphere", [-5, -5], [5, 5], lambda X: np.sum(X**2, axis=1), Features("Quadratic"))
    monkeypatch.setattr(harness, "catalog_lookup", lambda name: sphere)
    rep = run_experiment(ExperimentConfig(problems=("sphere",), runs=5, engine=EngineConfig(max_attempts=300)))
    row = rep.rows[0]
    assert row["feas_rate"] == 1.0 and row["best"] <= 1e-6


def test_parallel_and_serial_results_are_identical():
    cfg = ExperimentConfig(problems=("G24", "G08"), engine=FAST, runs=3)
    serial = run_experiment(cfg)
    parallel = run_experiment(replace(cfg, jobs=2))
    for a, b in zip(serial.records, parallel.records):
        assert (a.problem, a.seed, a.best_f, a.fe) == (b.problem, b.seed, b.best_f, b.fe)
        assert np.array_equal(a.trace, b.trace)
    strip = lambda rows: [{k: v for k, v in r.items() if k != "mean_time_ms"} for r in rows]
    assert strip(serial.rows) == strip(parallel.rows)


def test_scheme_overrides_apply_per_problem():
    cfg = ExperimentConfig(problems=("G24", "G08"), engine=FAST, runs=1, scheme_overrides={"G08": {"S": 1e6}})
    assert cfg.scheme_for("G08").S == 1e6 and cfg.scheme_for("G24").S == 1e3


def test_preliminary_trials_prefers_feasible_then_lower_median():
    S, table = preliminary_trials("G24", PenaltyScheme.static(), [1e3, 1e6], seeds=[5, 6], engine=FAST)
    assert S in (1e3, 1e6) and [e["S"] for e in table] == [1e3, 1e6]
    chosen = next(e for e in table if e["S"] == S)
    assert all(chosen["feasible"] >= e["feasible"] for e in table)


# -- export ----------------------------------------------------------------------

def test_export_files_and_round_trips(tmp_path):
    cfg = ExperimentConfig(problems=("G24",), engine=FAST, runs=2)
    rep = run_experiment(cfg)
    paths = export(rep, tmp_path, cfg)
    names = sorted(p.name for p in paths)
    assert names == ["report.csv", "report.json", "trace_G24_0.csv", "trace_G24_1.csv"]

    rows = read_report_csv(tmp_path / "report.csv")
    assert rows == rep.rows  # repr() floats round-trip exactly
    doc = json.loads((tmp_path / "report.json").read_text())
    assert rows_from_json(doc) == rep.rows
    assert doc["config"] == cfg.to_dict()

    with open(tmp_path / "trace_G24_0.csv") as fh:
        trace = list(csv.reader(fh))
    assert tuple(trace[0]) == TRACE_COLUMNS
    rec = rep.records[0]
    assert len(trace) - 1 == (rec.attempts + 1) * 5 == rec.trace.shape[0]
    assert [float(v) for v in trace[1][2:]] == list(rec.trace[0, 2:])


def test_empty_report_writes_header_only(tmp_path):
    export(ExperimentReport(rows=[]), tmp_path)
    lines = (tmp_path / "report.csv").read_text().splitlines()
    assert lines == [",".join(REPORT_COLUMNS)]


def test_all_dnc_row_exports_blank_statistics(tmp_path):
    rep = ExperimentReport(rows=[aggregate([record(1.0, converged=False)])])
    export(rep, tmp_path)
    rows = read_report_csv(tmp_path / "report.csv")
    assert rows[0]["best"] is None and rows[0]["dnc"] == 1


def test_rerun_reproduces_files_except_wall_time(tmp_path):
    cfg = ExperimentConfig(problems=("G24",), engine=FAST, runs=2)
    for sub in ("a", "b"):
        export(run_experiment(cfg), tmp_path / sub, cfg)
    for name in ("trace_G24_0.csv", "trace_G24_1.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    a, b = (read_report_csv(tmp_path / s / "report.csv") for s in ("a", "b"))
    for ra, rb in zip(a, b):
        ra.pop("mean_time_ms"), rb.pop("mean_time_ms")
        assert ra == rb


def test_export_failure_names_the_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(CohortOptError, match="file"):
        export(ExperimentReport(rows=[]), blocker / "sub")


def test_output_directory_fallback(monkeypatch):
    monkeypatch.setenv("COHORT_OPT_OUT", "/tmp/from-env")
    assert default_out_dir(None) == "/tmp/from-env"
    assert default_out_dir("explicit") == "explicit"
    monkeypatch.delenv("COHORT_OPT_OUT")
    assert default_out_dir(None) is None
