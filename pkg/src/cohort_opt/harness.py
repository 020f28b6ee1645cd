"""Multi-replicate experiments, summary statistics and file export.

Replicate ``i`` of every problem runs with seed ``base_seed + i``, so an
experiment is reproducible from its config alone. ``scheme_overrides`` maps a
problem name to penalty parameters (typically ``S``) that replace the base
scheme's for that problem; :func:`preliminary_trials` picks such values on
seeds kept apart from the experiment seeds. Runs may execute in a
process pool; results are merged back in (problem, replicate) order, so the
job count never changes the output.
"""
from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .engine import TRACE_COLUMNS, EngineConfig, RunRecord, run
from .errors import CohortOptError, ConfigurationError, ProblemLookupError
from .penalty import PenaltyScheme
from .problems import catalog_lookup

REPORT_COLUMNS = ("problem", "scheme", "best", "mean", "sd", "worst", "feas_rate", "mean_fe", "mean_time_ms", "dnc")
STAT_COLUMNS = ("best", "mean", "sd", "worst")

_ENGINE_KEYS = {f.name for f in fields(EngineConfig)} - {"seed"}
_CONFIG_KEYS = {"name", "problems", "scheme", "scheme_overrides", "engine", "runs", "base_seed", "out", "jobs"}


@dataclass(frozen=True)
class ExperimentConfig:
    problems: tuple = ()
    scheme: PenaltyScheme = field(default_factory=PenaltyScheme.static)
    engine: EngineConfig = field(default_factory=EngineConfig)
    runs: int = 20
    base_seed: int = 0
    out: Optional[str] = None
    jobs: int = 1
    name: str = ""
    scheme_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "problems", tuple(self.problems))
        object.__setattr__(self, "scheme_overrides", dict(self.scheme_overrides))

    def scheme_for(self, problem: str) -> PenaltyScheme:
        """The base scheme with any per-problem parameter overrides applied."""
        over = self.scheme_overrides.get(problem)
        if not over:
            return self.scheme
        return PenaltyScheme.from_dict({**self.scheme.to_dict(), **over})

    def errors(self) -> list[str]:
        """Every problem with this config, empty when it is valid."""
        errs = []
        if not self.problems:
            errs.append("problems: at least one problem name is required")
        for name in self.problems:
            try:
                catalog_lookup(name)
            except ProblemLookupError as exc:
                errs.append(f"problems: {exc}")
        if isinstance(self.runs, bool) or not isinstance(self.runs, int) or self.runs < 1:
            errs.append(f"runs: must be an integer >= 1, got {self.runs!r}")
        if isinstance(self.jobs, bool) or not isinstance(self.jobs, int) or self.jobs < 1:
            errs.append(f"jobs: must be an integer >= 1, got {self.jobs!r}")
        if isinstance(self.base_seed, bool) or not isinstance(self.base_seed, int) or self.base_seed < 0:
            errs.append(f"base_seed: must be an integer >= 0, got {self.base_seed!r}")
        elif isinstance(self.runs, int) and self.base_seed + max(self.runs, 1) - 1 >= 2**64:
            errs.append("base_seed: replicate seeds would exceed 64 bits")
        for name, over in self.scheme_overrides.items():
            if not isinstance(over, dict):
                errs.append(f"scheme_overrides[{name!r}]: must be an object")
                continue
            try:
                catalog_lookup(name)
                self.scheme_for(name)
            except (CohortOptError, TypeError) as exc:
                errs.append(f"scheme_overrides[{name!r}]: {exc}")
        return errs

    def validate(self):
        errs = self.errors()
        if errs:
            raise ConfigurationError("invalid experiment config:\n  " + "\n  ".join(errs))

    def replicate_seed(self, index: int) -> int:
        return self.base_seed + index

    def to_dict(self) -> dict:
        engine = asdict(self.engine)
        engine.pop("seed")
        return {
            "name": self.name,
            "problems": list(self.problems),
            "scheme": self.scheme.to_dict(),
            "scheme_overrides": {k: dict(v) for k, v in self.scheme_overrides.items()},
            "engine": engine,
            "runs": self.runs,
            "base_seed": self.base_seed,
            "out": self.out,
            "jobs": self.jobs,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        """Parse a config mapping, reporting every schema violation at once."""
        if not isinstance(data, dict):
            raise ConfigurationError("experiment config must be a JSON object")
        errs = [f"unknown key {k!r}" for k in sorted(set(data) - _CONFIG_KEYS)]

        problems = data.get("problems", [])
        if isinstance(problems, str) or not isinstance(problems, list):
            errs.append("problems: must be a list of names")
            problems = []

        scheme = PenaltyScheme.static()
        try:
            scheme = PenaltyScheme.from_dict(data.get("scheme", {"kind": "static"}))
        except (ConfigurationError, TypeError) as exc:
            errs.append(f"scheme: {exc}")

        scheme_overrides = data.get("scheme_overrides", {})
        if not isinstance(scheme_overrides, dict):
            errs.append("scheme_overrides: must be an object mapping problem names to parameters")
            scheme_overrides = {}

        engine = EngineConfig()
        overrides = data.get("engine", {})
        if not isinstance(overrides, dict):
            errs.append("engine: must be an object")
            overrides = {}
        bad = sorted(set(overrides) - _ENGINE_KEYS)
        errs += [f"engine: unknown key {k!r}" for k in bad]
        try:
            engine = EngineConfig(**{k: v for k, v in overrides.items() if k in _ENGINE_KEYS})
        except (ConfigurationError, TypeError) as exc:
            errs.append(f"engine: {exc}")

        cfg = cls(
            problems=tuple(problems),
            scheme=scheme,
            scheme_overrides=scheme_overrides,
            engine=engine,
            runs=data.get("runs", 20),
            base_seed=data.get("base_seed", 0),
            out=data.get("out"),
            jobs=data.get("jobs", 1),
            name=data.get("name", ""),
        )
        errs += cfg.errors()
        if errs:
            raise ConfigurationError("invalid experiment config:\n  " + "\n  ".join(errs))
        return cfg

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigurationError(f"{path}: cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: not valid JSON: {exc}") from exc
        return cls.from_dict(data)


@dataclass
class ExperimentReport:
    rows: list  # one dict per problem, keys REPORT_COLUMNS
    records: list = field(default_factory=list)  # RunRecords in (problem, replicate) order

    def row(self, problem: str) -> dict:
        for r in self.rows:
            if r["problem"] == problem:
                return r
        raise KeyError(problem)


def aggregate(records: Sequence[RunRecord]) -> dict:
    """Summary row for the runs of one problem under one scheme.

    Objective statistics use converged runs that ended feasible; the SD is
    the population SD of their best values. When no run qualifies the
    statistics are ``None``.
    """
    if not records:
        raise ConfigurationError("aggregate needs at least one run record")
    problems = {r.problem for r in records}
    schemes = {r.scheme for r in records}
    if len(problems) != 1 or len(schemes) != 1:
        raise ConfigurationError("aggregate expects records of a single problem and scheme")
    R = len(records)
    good = np.array([r.best_f for r in records if r.converged and r.feasible], dtype=float)
    row = {"problem": records[0].problem, "scheme": records[0].scheme}
    if good.size:
        lo, hi = float(good.min()), float(good.max())
        # clamp guards against summation rounding when all bests are equal
        row.update(best=lo, mean=min(max(float(good.mean()), lo), hi), sd=float(good.std()), worst=hi)
    else:
        row.update({k: None for k in STAT_COLUMNS})
    row.update(
        feas_rate=sum(r.feasible for r in records) / R,
        mean_fe=float(np.mean([r.fe for r in records])),
        mean_time_ms=float(np.mean([r.wall_time for r in records]) * 1000.0),
        dnc=sum(r.dnc for r in records),
    )
    return row


def _one_run(args) -> RunRecord:
    name, scheme, engine = args
    return run(catalog_lookup(name), scheme, engine)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run ``cfg.runs`` replicates of every problem and summarize them."""
    cfg.validate()
    tasks = [
        (name, cfg.scheme_for(name), cfg.engine.replace(seed=cfg.replicate_seed(i)))
        for name in cfg.problems
        for i in range(cfg.runs)
    ]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_one_run, tasks))  # map preserves task order
    else:
        records = [_one_run(t) for t in tasks]
    rows = [aggregate(records[k * cfg.runs:(k + 1) * cfg.runs]) for k in range(len(cfg.problems))]
    return ExperimentReport(rows=rows, records=records)


def preliminary_trials(problem: str, scheme: PenaltyScheme, grid: Sequence[float],
                       seeds: Sequence[int] = range(1000, 1004),
                       engine: EngineConfig = EngineConfig()) -> tuple[float, list[dict]]:
    """Choose the penalty constant ``S`` for one problem from ``grid``.

    Each candidate value is run once per seed. The winner has the most
    feasible runs, then the lowest median feasible objective, then the
    smallest ``S``. Keep ``seeds`` disjoint from the replicate seeds of the
    experiments that will use the result.
    """
    spec = catalog_lookup(problem)
    table = []
    for S in grid:
        trial = PenaltyScheme.from_dict({**scheme.to_dict(), "S": float(S)})
        recs = [run(spec, trial, engine.replace(seed=s)) for s in seeds]
        feasible = [r.best_f for r in recs if r.feasible]
        table.append({
            "S": float(S),
            "feasible": len(feasible),
            "median": float(np.median(feasible)) if feasible else None,
            "dnc": sum(r.dnc for r in recs),
        })
    best = min(table, key=lambda e: (-e["feasible"], math.inf if e["median"] is None else e["median"], e["S"]))
    return best["S"], table


# -- export ----------------------------------------------------------------------

def _fmt(value) -> str:
    """Round-trip decimal text; empty for absent values."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write(path: Path, writer):
    try:
        with open(path, "w", newline="") as fh:
            writer(fh)
    except OSError as exc:
        raise CohortOptError(f"{path}: cannot write: {exc.strerror or exc}") from exc


def write_report_csv(rows, path):
    def w(fh):
        out = csv.writer(fh)
        out.writerow(REPORT_COLUMNS)
        for row in rows:
            out.writerow([row["problem"], row["scheme"]] + [_fmt(row[k]) for k in REPORT_COLUMNS[2:]])
    _write(Path(path), w)


def read_report_csv(path) -> list[dict]:
    rows = []
    with open(path, newline="") as fh:
        for raw in csv.DictReader(fh):
            row = {"problem": raw["problem"], "scheme": raw["scheme"]}
            for k in ("best", "mean", "sd", "worst", "feas_rate", "mean_fe", "mean_time_ms"):
                row[k] = float(raw[k]) if raw[k] != "" else None
            row["dnc"] = int(raw["dnc"])
            rows.append(row)
    return rows


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def report_to_json(report: ExperimentReport, cfg: Optional[ExperimentConfig] = None) -> dict:
    doc = {
        "columns": list(REPORT_COLUMNS),
        "problems": {
            row["problem"]: {
                "scheme": row["scheme"],
                "objective": {k: row[k] for k in STAT_COLUMNS},
                "feas_rate": row["feas_rate"],
                "mean_fe": row["mean_fe"],
                "mean_time_ms": row["mean_time_ms"],
                "dnc": row["dnc"],
            }
            for row in report.rows
        },
        "runs": [{k: _json_safe(v) for k, v in r.summary().items()} for r in report.records],
    }
    if cfg is not None:
        doc["config"] = cfg.to_dict()
    return doc


def rows_from_json(doc: dict) -> list[dict]:
    """Flat report rows from a document written by :func:`report_to_json`."""
    rows = []
    for problem, entry in doc["problems"].items():
        row = {"problem": problem, "scheme": entry["scheme"], **entry["objective"]}
        row.update({k: entry[k] for k in ("feas_rate", "mean_fe", "mean_time_ms", "dnc")})
        rows.append({k: row[k] for k in REPORT_COLUMNS})
    return rows


def write_trace_csv(record: RunRecord, path):
    def w(fh):
        out = csv.writer(fh)
        out.writerow(TRACE_COLUMNS)
        for attempt, cand, fq, f, v in record.trace:
            out.writerow([int(attempt), int(cand), _fmt(fq), _fmt(f), _fmt(v)])
    _write(Path(path), w)


def trace_filename(problem: str, replicate: int) -> str:
    return f"trace_{problem}_{replicate}.csv"


def export(report: ExperimentReport, out_dir, cfg: Optional[ExperimentConfig] = None,
           traces: bool = True) -> list[Path]:
    """Write report.csv, report.json and one trace CSV per run into ``out_dir``."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CohortOptError(f"{out}: cannot create output directory: {exc.strerror or exc}") from exc
    paths = [out / "report.csv", out / "report.json"]
    write_report_csv(report.rows, paths[0])
    doc = report_to_json(report, cfg)
    _write(paths[1], lambda fh: json.dump(doc, fh, indent=2))
    if traces:
        replicate = {}
        for rec in report.records:
            i = replicate.get(rec.problem, 0)
            replicate[rec.problem] = i + 1
            p = out / trace_filename(rec.problem, i)
            write_trace_csv(rec, p)
            paths.append(p)
    return paths


def default_out_dir(explicit: Optional[str] = None) -> Optional[str]:
    """``explicit`` if given, else ``$COHORT_OPT_OUT``, else ``None``."""
    return explicit or os.environ.get("COHORT_OPT_OUT") or None


__all__ = [
    "REPORT_COLUMNS", "ExperimentConfig", "ExperimentReport", "aggregate",
    "default_out_dir", "export", "read_report_csv", "report_to_json", "rows_from_json", "run_experiment",
    "trace_filename", "write_report_csv", "write_trace_csv",
]
