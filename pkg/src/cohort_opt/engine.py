"""Cohort Intelligence learning loop.

A cohort of ``C`` candidates repeats the following learning attempt:

1. each candidate picks a peer to follow by roulette over probabilities
   proportional to ``1 / f_q`` (behaviors shifted to be >= 1 when any is
   non-positive),
2. its sampling interval is re-centred on the followed peer's qualities and
   shrunk by the reduction factor ``r``,
3. it draws ``t`` points from the new interval and keeps the best one.

When the cohort's best and worst behaviors stop moving and agree to within
``epsilon`` the cohort is *saturated*: every interval is expanded back to the
original bounds and the search starts contracting again. The run ends after
``max_attempts`` attempts, or at the first saturation event that brings the
count to at least ``max_saturations`` while the best-so-far value has not
moved by more than ``epsilon`` since the previous saturation event (the very
first event has nothing to compare with and always qualifies).

Widths shrink geometrically: the nominal width after ``k`` attempts since the
last saturation is ``w0 * r**k``; the actual interval is that window clipped
to the problem bounds.
"""
from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import ConfigurationError, EvaluationError
from .penalty import PenalizedObjective, PenaltyScheme, ViolationReport, make_penalized
from .problems import ProblemSpec

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("attempt", "candidate", "f_q", "f_raw", "violation")


@dataclass(frozen=True)
class EngineConfig:
    candidates: int = 5
    reduction: float = 0.9
    samples: int = 10
    epsilon: float = 1e-11
    max_attempts: int = 1000
    max_saturations: int = 10
    seed: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self):
        if int(self.candidates) != self.candidates or self.candidates < 2:
            raise ConfigurationError(f"candidates must be an integer >= 2, got {self.candidates}")
        if not 0.0 <= self.reduction <= 1.0:
            raise ConfigurationError(f"reduction factor must lie in [0, 1], got {self.reduction}")
        if int(self.samples) != self.samples or self.samples < 1:
            raise ConfigurationError(f"samples per candidate must be an integer >= 1, got {self.samples}")
        if not (np.isfinite(self.epsilon) and self.epsilon > 0):
            raise ConfigurationError(f"epsilon must be finite and > 0, got {self.epsilon}")
        if int(self.max_attempts) != self.max_attempts or self.max_attempts < 1:
            raise ConfigurationError(f"max_attempts must be an integer >= 1, got {self.max_attempts}")
        if int(self.max_saturations) != self.max_saturations or self.max_saturations < 1:
            raise ConfigurationError(f"max_saturations must be an integer >= 1, got {self.max_saturations}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def replace(self, **changes) -> "EngineConfig":
        return EngineConfig(**{**asdict(self), **changes})


@dataclass(frozen=True)
class SamplingIntervals:
    lo: np.ndarray
    hi: np.ndarray
    width: np.ndarray  # nominal (unclipped) width driving the next shrink


@dataclass(frozen=True)
class Candidate:
    qualities: np.ndarray
    intervals: SamplingIntervals
    behavior: float
    raw_objective: float
    violation: float


@dataclass
class Cohort:
    """State of all candidates, stored column-wise (one row per candidate)."""

    X: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    width: np.ndarray
    behavior: np.ndarray
    raw: np.ndarray
    report: ViolationReport

    @property
    def violation(self) -> np.ndarray:
        return self.report.total

    @property
    def size(self) -> int:
        return self.X.shape[0]

    def candidate(self, c: int) -> Candidate:
        return Candidate(
            qualities=self.X[c].copy(),
            intervals=SamplingIntervals(self.lo[c].copy(), self.hi[c].copy(), self.width[c].copy()),
            behavior=float(self.behavior[c]),
            raw_objective=float(self.raw[c]),
            violation=float(self.violation[c]),
        )

    def expand(self, lower: np.ndarray, upper: np.ndarray):
        """Reset every candidate's interval to the original bounds."""
        C = self.size
        self.lo = np.tile(lower, (C, 1))
        self.hi = np.tile(upper, (C, 1))
        self.width = self.hi - self.lo


@dataclass
class SaturationState:
    history: list = field(default_factory=list)  # (max, min) of behaviors per attempt
    count: int = 0


@dataclass
class RunRecord:
    problem: str
    scheme: str
    seed: int
    best_x: np.ndarray
    best_f: float
    best_fq: float
    violation: float
    equality_violation: float
    feasible: bool
    fe: int
    attempts: int
    saturations: int
    converged: bool
    wall_time: float
    trace: np.ndarray  # rows of TRACE_COLUMNS, attempt 0 is the initial cohort
    fe_history: np.ndarray  # FE spent per trace attempt
    best_history: np.ndarray  # best feasible raw objective after each attempt (NaN until one is found)

    @property
    def dnc(self) -> bool:
        return not self.converged

    def summary(self) -> dict:
        return {
            "problem": self.problem,
            "scheme": self.scheme,
            "seed": self.seed,
            "best_x": [float(v) for v in self.best_x],
            "best_f": self.best_f,
            "best_fq": self.best_fq,
            "violation": self.violation,
            "equality_violation": self.equality_violation,
            "feasible": self.feasible,
            "fe": self.fe,
            "attempts": self.attempts,
            "saturations": self.saturations,
            "converged": self.converged,
            "wall_time": self.wall_time,
        }


# -- operations ----------------------------------------------------------------

def _check_finite(behaviors: np.ndarray, what: str):
    bad = np.flatnonzero(~np.isfinite(behaviors))
    if bad.size:
        raise EvaluationError(f"{what}: candidate {int(bad[0])} has non-finite behavior {behaviors[bad[0]]}")


def init_cohort(spec: ProblemSpec, penalized: PenalizedObjective, cfg: EngineConfig,
                rng: np.random.Generator) -> Cohort:
    """Sample ``C`` candidates uniformly inside the original bounds."""
    C = cfg.candidates
    if C < 2:
        raise ConfigurationError("a cohort needs at least 2 candidates")
    if not (np.all(np.isfinite(spec.lower)) and np.all(np.isfinite(spec.upper))):
        raise ConfigurationError(f"{spec.name}: bounds must be finite")
    X = rng.uniform(spec.lower, spec.upper, size=(C, spec.dimension))
    fq, f, report = penalized.evaluate(X, q_k=1)
    _check_finite(fq, "initial cohort")
    lo = np.tile(spec.lower, (C, 1))
    hi = np.tile(spec.upper, (C, 1))
    return Cohort(X, lo, hi, hi - lo, fq, f, report)


def selection_probabilities(behaviors) -> np.ndarray:
    """Roulette probabilities, larger for smaller (better) behaviors.

    ``p_c = (1/f_c) / sum(1/f)``. When any behavior is <= 0 all are shifted to
    ``f - min(f) + 1`` first so the ordering is preserved.
    """
    f = np.asarray(behaviors, dtype=float)
    if f.ndim != 1 or f.size < 2:
        raise ConfigurationError("selection needs at least 2 behaviors")
    _check_finite(f, "selection")
    if np.all(f == f[0]):
        return np.full(f.size, 1.0 / f.size)
    if f.min() <= 0:
        f = f - f.min() + 1.0
    # min/f is 1/f rescaled into (0, 1], so tiny behaviors cannot overflow
    inv = f.min() / f
    return inv / inv.sum()


def follow_roulette(p, rng: Optional[np.random.Generator] = None, u=None):
    """Index (or indices) picked by roulette over ``p``.

    One uniform draw per pick, compared against the cumulative distribution.
    ``u`` may be given directly, either a scalar or an array of draws.
    """
    p = np.asarray(p, dtype=float)
    if p.size == 0:
        raise ConfigurationError("empty probability vector")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ConfigurationError(f"probabilities must sum to 1, got {p.sum()!r}")
    if u is None:
        if rng is None:
            raise ConfigurationError("follow_roulette needs an rng or explicit draws")
        u = rng.random()
    cum = np.cumsum(p)
    idx = np.searchsorted(cum, u, side="right")
    # Guard against cum[-1] falling a hair below 1.
    idx = np.minimum(idx, np.flatnonzero(p > 0)[-1])
    return int(idx) if np.ndim(idx) == 0 else idx


def shrink_intervals(center, width, r: float, lower, upper) -> SamplingIntervals:
    """Window of width ``r * width`` centred on ``center``, clipped to the bounds."""
    if not 0.0 <= r <= 1.0:
        raise ConfigurationError(f"reduction factor must lie in [0, 1], got {r}")
    center = np.asarray(center, dtype=float)
    new_width = r * np.asarray(width, dtype=float)
    half = new_width / 2.0
    lo = np.maximum(center - half, lower)
    hi = np.minimum(center + half, upper)
    return SamplingIntervals(lo, hi, new_width)


class Resample(NamedTuple):
    X: np.ndarray  # (C, N) selected qualities
    behavior: np.ndarray  # (C,)
    raw: np.ndarray
    report: ViolationReport  # per selected candidate
    samples: np.ndarray  # (C, t, N) everything drawn
    sample_fq: np.ndarray  # (C, t), NaN where discarded
    sample_f: np.ndarray
    sample_report: ViolationReport  # batch over C * t samples


def resample_and_select(lo, hi, t: int, penalized: PenalizedObjective, rng: np.random.Generator,
                        q_k: int = 1) -> Resample:
    """Draw ``t`` points per candidate from its interval and keep the best.

    ``lo`` and ``hi`` are ``(C, N)``; a single candidate can pass 1-D arrays.
    Samples with non-finite values are discarded; a candidate whose samples
    are all discarded raises :class:`EvaluationError`.
    """
    if t < 1:
        raise ConfigurationError(f"t must be >= 1, got {t}")
    lo = np.atleast_2d(np.asarray(lo, dtype=float))
    hi = np.atleast_2d(np.asarray(hi, dtype=float))
    if np.any(lo > hi):
        raise ConfigurationError("interval lower end exceeds upper end")
    C, N = lo.shape
    samples = rng.uniform(lo[:, None, :], hi[:, None, :], size=(C, t, N))
    fq, f, report = penalized.evaluate(samples.reshape(C * t, N), q_k=q_k)
    fq = fq.reshape(C, t)
    f = f.reshape(C, t)
    bad = np.isnan(fq)
    if bad.any():
        logger.warning("discarded %d sample(s) with non-finite objective or constraints", int(bad.sum()))
        dead = np.flatnonzero(bad.all(axis=1))
        if dead.size:
            raise EvaluationError(f"all {t} samples of candidate {int(dead[0])} were non-finite")
    pick = np.nanargmin(np.where(bad, np.inf, fq), axis=1)
    rows = np.arange(C)
    flat = rows * t + pick
    return Resample(
        X=samples[rows, pick],
        behavior=fq[rows, pick],
        raw=f[rows, pick],
        report=report.take(flat),
        samples=samples,
        sample_fq=fq,
        sample_f=f,
        sample_report=report,
    )


def check_saturation(state: SaturationState, behaviors, epsilon: float) -> bool:
    """Record this attempt's behaviors and test the three saturation conditions.

    Saturated when, between the previous and current attempt, the maximum
    moved by at most ``epsilon``, the minimum moved by at most ``epsilon``,
    and the current maximum and minimum differ by at most ``epsilon``.
    Increments ``state.count`` when saturated; the caller expands intervals.
    """
    b = np.asarray(behaviors, dtype=float)
    state.history.append((float(b.max()), float(b.min())))
    if len(state.history) < 2:
        return False
    (max_prev, min_prev), (max_now, min_now) = state.history[-2], state.history[-1]
    saturated = (
        abs(max_now - max_prev) <= epsilon
        and abs(min_now - min_prev) <= epsilon
        and abs(max_now - min_now) <= epsilon
    )
    if saturated:
        state.count += 1
    return saturated


class _Archive:
    """Best feasible point seen so far, else the least-violating one."""

    def __init__(self, N):
        self.x = np.full(N, np.nan)
        self.f = np.inf
        self.fq = np.inf
        self.violation = np.inf
        self.eq_violation = np.inf
        self.feasible = False

    def update(self, X, fq, f, report: ViolationReport):
        ok = ~np.isnan(fq)
        feasible = report.feasible & ok
        total = report.total
        if feasible.any():
            idx = np.flatnonzero(feasible)
            i = idx[np.argmin(f[idx])]
            if not self.feasible or f[i] < self.f:
                self._take(X, fq, f, report, total, i, True)
        elif not self.feasible and ok.any():
            idx = np.flatnonzero(ok)
            i = idx[np.argmin(total[idx])]
            if total[i] < self.violation:
                self._take(X, fq, f, report, total, i, False)

    @property
    def level(self) -> float:
        """Scalar used for the unchanged-best test: objective if feasible, else violation."""
        return self.f if self.feasible else self.violation

    def _take(self, X, fq, f, report, total, i, feasible):
        self.x = X[i].copy()
        self.f = float(f[i])
        self.fq = float(fq[i])
        self.violation = float(total[i])
        self.eq_violation = float(report.equality_total[i])
        self.feasible = feasible


def run(spec: ProblemSpec, scheme: PenaltyScheme, cfg: EngineConfig = EngineConfig()) -> RunRecord:
    """One seeded optimization run."""
    cfg.validate()
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    penalized = make_penalized(spec, scheme)
    C, t, N = cfg.candidates, cfg.samples, spec.dimension

    cohort = init_cohort(spec, penalized, cfg, rng)
    archive = _Archive(N)
    archive.update(cohort.X, cohort.behavior, cohort.raw, cohort.report)

    trace = [_trace_rows(0, cohort)]
    fe_history = [C]
    best_history = []
    state = SaturationState()
    attempts = 0
    level_at_last_saturation = None

    for attempt in range(1, cfg.max_attempts + 1):
        attempts = attempt
        p = selection_probabilities(cohort.behavior)
        follow = follow_roulette(p, u=rng.random(C))
        iv = shrink_intervals(cohort.X[follow], cohort.width, cfg.reduction, spec.lower, spec.upper)
        fe_before = penalized.fe
        res = resample_and_select(iv.lo, iv.hi, t, penalized, rng, q_k=attempt)
        archive.update(res.samples.reshape(C * t, N), res.sample_fq.ravel(), res.sample_f.ravel(),
                       res.sample_report)
        cohort = Cohort(res.X, iv.lo, iv.hi, iv.width, res.behavior, res.raw, res.report)

        trace.append(_trace_rows(attempt, cohort))
        fe_history.append(penalized.fe - fe_before)
        best_history.append(archive.f if archive.feasible else np.nan)

        if check_saturation(state, cohort.behavior, cfg.epsilon):
            cohort.expand(spec.lower, spec.upper)
            logger.debug("%s: saturation %d at attempt %d", spec.name, state.count, attempt)
            level = archive.level
            unchanged = level_at_last_saturation is None or abs(level - level_at_last_saturation) <= cfg.epsilon
            level_at_last_saturation = level
            if state.count >= cfg.max_saturations and unchanged:
                break

    return RunRecord(
        problem=spec.name,
        scheme=scheme.label,
        seed=int(cfg.seed),
        best_x=archive.x,
        best_f=archive.f,
        best_fq=archive.fq,
        violation=archive.violation,
        equality_violation=archive.eq_violation,
        feasible=archive.feasible,
        fe=penalized.fe,
        attempts=attempts,
        saturations=state.count,
        converged=state.count > 0,
        wall_time=time.perf_counter() - start,
        trace=np.concatenate(trace),
        fe_history=np.asarray(fe_history, dtype=int),
        best_history=np.asarray(best_history, dtype=float),
    )


def _trace_rows(attempt: int, cohort: Cohort) -> np.ndarray:
    C = cohort.size
    return np.column_stack([
        np.full(C, attempt, dtype=float),
        np.arange(C, dtype=float),
        cohort.behavior,
        cohort.raw,
        cohort.violation,
    ])
