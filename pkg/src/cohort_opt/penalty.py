"""Static and dynamic penalty transforms.

Both schemes turn a constrained problem into an unconstrained pseudo-objective
``f_q`` that equals ``f`` on feasible points:

* static:  ``f + S * sum(g_i**2 over violated i) + S * sum(|h_j| over violated j)``
* dynamic: ``f + (q_k**alpha * S) * (sum(g_i**beta) + sum(|h_j|**beta))``

An inequality ``g_i <= 0`` is violated when ``g_i > 0``; an equality is
violated when ``|h_j| > delta``. ``q_k`` is the learning-attempt counter and is
always passed in by the caller, so a scheme holds no mutable state.

All functions accept a single point (1-D arrays) or a batch with a leading
sample axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError, EvaluationError

DEFAULT_DELTA = 1e-4

# q_k**alpha * S is clamped here instead of overflowing; escalation stops
# being strict past this value.
PENALTY_FACTOR_CEILING = 1e100

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ConstraintSet:
    """Inequality (``g <= 0``) and equality (``h = 0``) evaluators.

    ``inequality`` and ``equality`` map a ``(k, N)`` batch to ``(k, n)`` and
    ``(k, m)`` arrays respectively.
    """

    inequality: Optional[ArrayFn] = None
    equality: Optional[ArrayFn] = None
    n_ineq: int = 0
    n_eq: int = 0
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        if (self.inequality is None) != (self.n_ineq == 0):
            raise ConfigurationError("inequality evaluator and n_ineq disagree")
        if (self.equality is None) != (self.n_eq == 0):
            raise ConfigurationError("equality evaluator and n_eq disagree")
        if not self.delta > 0:
            raise ConfigurationError(f"equality tolerance must be > 0, got {self.delta}")

    def evaluate(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(G, H)`` for a ``(k, N)`` batch."""
        k = X.shape[0]
        G = np.empty((k, 0)) if self.inequality is None else np.asarray(self.inequality(X), float)
        H = np.empty((k, 0)) if self.equality is None else np.asarray(self.equality(X), float)
        if G.shape != (k, self.n_ineq):
            raise EvaluationError(f"inequality evaluator returned shape {G.shape}, expected {(k, self.n_ineq)}")
        if H.shape != (k, self.n_eq):
            raise EvaluationError(f"equality evaluator returned shape {H.shape}, expected {(k, self.n_eq)}")
        return G, H


@dataclass(frozen=True)
class ViolationReport:
    """Per-constraint violation magnitudes.

    ``ineq`` holds ``max(0, g_i)`` and ``eq`` holds ``|h_j|``; both carry an
    optional leading batch axis.
    """

    ineq: np.ndarray
    eq: np.ndarray
    delta: float = DEFAULT_DELTA

    @classmethod
    def from_values(cls, G, H, delta=DEFAULT_DELTA) -> "ViolationReport":
        G = np.asarray(G, dtype=float)
        H = np.asarray(H, dtype=float)
        return cls(np.maximum(G, 0.0), np.abs(H), delta)

    @property
    def total(self):
        return self.ineq.sum(axis=-1) + self.eq.sum(axis=-1)

    @property
    def equality_total(self):
        return self.eq.sum(axis=-1)

    @property
    def feasible(self):
        return np.all(self.ineq == 0.0, axis=-1) & np.all(self.eq <= self.delta, axis=-1)

    @property
    def violated_eq(self) -> np.ndarray:
        return self.eq > self.delta

    def take(self, idx) -> "ViolationReport":
        return ViolationReport(self.ineq[idx], self.eq[idx], self.delta)


def evaluate_violations(cs: ConstraintSet, x) -> ViolationReport:
    """Violation report for a single point ``x``.

    Raises :class:`EvaluationError` naming the first constraint that produced
    a non-finite value.
    """
    x = np.asarray(x, dtype=float)
    G, H = cs.evaluate(x[None, :])
    G, H = G[0], H[0]
    for kind, values in (("inequality", G), ("equality", H)):
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise EvaluationError(f"{kind} constraint {int(bad[0])} is not finite at x={x.tolist()}")
    return ViolationReport.from_values(G, H, cs.delta)


def static_pseudo_objective(f, report: ViolationReport, S: float):
    """Constant-weight penalty; inequality terms are squared."""
    eq_terms = np.where(report.violated_eq, report.eq, 0.0)
    return f + S * (np.sum(report.ineq**2, axis=-1) + np.sum(eq_terms, axis=-1))


def penalty_factor(S: float, alpha: int, q_k: int) -> float:
    """``q_k**alpha * S`` clamped at :data:`PENALTY_FACTOR_CEILING`."""
    try:
        factor = math.pow(float(q_k), alpha) * S
    except OverflowError:
        return PENALTY_FACTOR_CEILING
    return min(factor, PENALTY_FACTOR_CEILING)


def dynamic_pseudo_objective(f, report: ViolationReport, S: float, alpha: int, beta: int, q_k: int):
    if q_k < 1:
        raise ConfigurationError(f"attempt counter q_k must be >= 1, got {q_k}")
    factor = penalty_factor(S, alpha, q_k)
    eq_terms = np.where(report.violated_eq, report.eq**beta, 0.0)
    return f + factor * (np.sum(report.ineq**beta, axis=-1) + np.sum(eq_terms, axis=-1))


@dataclass(frozen=True)
class PenaltyScheme:
    """Penalty settings. Build with :meth:`static` or :meth:`dynamic`."""

    kind: str = "static"
    S: float = 1e3
    alpha: int = 2
    beta: int = 2
    delta: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("static", "dynamic"):
            raise ConfigurationError(f"scheme must be 'static' or 'dynamic', got {self.kind!r}")
        if not (np.isfinite(self.S) and self.S > 0):
            raise ConfigurationError(f"penalty constant S must be finite and > 0, got {self.S}")
        if self.kind == "dynamic":
            for name in ("alpha", "beta"):
                value = getattr(self, name)
                if int(value) != value or value < 1:
                    raise ConfigurationError(f"{name} must be an integer >= 1, got {value}")
                object.__setattr__(self, name, int(value))
        if self.delta is not None and not self.delta > 0:
            raise ConfigurationError(f"delta must be > 0, got {self.delta}")

    @classmethod
    def static(cls, S: float = 1e3, delta: Optional[float] = None) -> "PenaltyScheme":
        return cls("static", S=S, delta=delta)

    @classmethod
    def dynamic(cls, S: float = 0.5, alpha: int = 2, beta: int = 2, delta: Optional[float] = None) -> "PenaltyScheme":
        return cls("dynamic", S=S, alpha=alpha, beta=beta, delta=delta)

    @property
    def label(self) -> str:
        return "SCI" if self.kind == "static" else "DCI"

    def pseudo_objective(self, f, report: ViolationReport, q_k: int = 1):
        if self.kind == "static":
            return static_pseudo_objective(f, report, self.S)
        return dynamic_pseudo_objective(f, report, self.S, self.alpha, self.beta, q_k)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "S": self.S}
        if self.kind == "dynamic":
            d.update(alpha=self.alpha, beta=self.beta)
        if self.delta is not None:
            d["delta"] = self.delta
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PenaltyScheme":
        d = dict(d)
        kind = d.pop("kind", "static")
        unknown = set(d) - {"S", "alpha", "beta", "delta"}
        if unknown:
            raise ConfigurationError(f"unknown scheme keys: {sorted(unknown)}")
        if kind == "static" and ({"alpha", "beta"} & set(d)):
            raise ConfigurationError("alpha/beta only apply to the dynamic scheme")
        if kind == "static":
            return cls.static(**d)
        if kind == "dynamic":
            return cls.dynamic(**d)
        raise ConfigurationError(f"scheme must be 'static' or 'dynamic', got {kind!r}")


class PenalizedObjective:
    """Evaluate ``(f_q, f, violations)`` for a problem under a scheme.

    Every evaluated point adds one to :attr:`fe`. Non-finite objective or
    constraint values are returned as NaN in ``f_q`` rather than raised, so
    that callers sampling in bulk can discard them.
    """

    def __init__(self, spec, scheme: PenaltyScheme):
        self.spec = spec
        self.scheme = scheme
        self.delta = scheme.delta if scheme.delta is not None else spec.constraints.delta
        self.fe = 0

    def evaluate(self, X: np.ndarray, q_k: int = 1):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        with np.errstate(all="ignore"):
            f = np.asarray(self.spec.objective(X), dtype=float).reshape(X.shape[0])
            G, H = self.spec.constraints.evaluate(X)
            report = ViolationReport.from_values(G, H, self.delta)
            fq = np.asarray(self.scheme.pseudo_objective(f, report, q_k), dtype=float)
        bad = ~(np.isfinite(f) & np.all(np.isfinite(G), axis=1) & np.all(np.isfinite(H), axis=1))
        fq = np.where(bad | ~np.isfinite(fq), np.nan, fq)
        self.fe += X.shape[0]
        return fq, f, report

    def __call__(self, x, q_k: int = 1):
        """Single-point evaluation returning Python scalars and a 1-D report."""
        fq, f, report = self.evaluate(np.asarray(x, dtype=float)[None, :], q_k)
        return float(fq[0]), float(f[0]), report.take(0)


def make_penalized(spec, scheme: PenaltyScheme) -> PenalizedObjective:
    return PenalizedObjective(spec, scheme)
