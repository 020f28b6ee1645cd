from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..errors import ConfigurationError
from ..penalty import ConstraintSet, ViolationReport

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Features:
    """Problem type and constraint counts (linear/nonlinear inequality/equality)."""

    type: str
    li: int = 0
    ni: int = 0
    le: int = 0
    ne: int = 0

    @property
    def n_ineq(self) -> int:
        return self.li + self.ni

    @property
    def n_eq(self) -> int:
        return self.le + self.ne


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """A box-bounded constrained minimization problem.

    ``objective`` maps a ``(k, N)`` batch to ``(k,)`` values. Problems whose
    natural sense is maximization store the negated objective.
    """

    name: str
    lower: np.ndarray
    upper: np.ndarray
    objective: ArrayFn
    constraints: ConstraintSet
    features: Features
    known_best: Optional[float] = None
    known_best_point: Optional[np.ndarray] = None
    description: str = ""
    source: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.ndim != 1 or lower.shape != upper.shape or lower.size == 0:
            raise ConfigurationError(f"{self.name}: bounds must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ConfigurationError(f"{self.name}: bounds must be finite")
        if np.any(lower > upper):
            raise ConfigurationError(f"{self.name}: lower bound exceeds upper bound")
        if self.features.n_ineq != self.constraints.n_ineq or self.features.n_eq != self.constraints.n_eq:
            raise ConfigurationError(f"{self.name}: feature counts do not match the constraint set")
        if self.known_best_point is not None:
            object.__setattr__(self, "known_best_point", np.asarray(self.known_best_point, dtype=float))

    @property
    def dimension(self) -> int:
        return self.lower.size

    def evaluate(self, x) -> tuple[float, ViolationReport]:
        """Raw objective and violation report at one point."""
        x = np.asarray(x, dtype=float)[None, :]
        f = float(np.asarray(self.objective(x), dtype=float).reshape(1)[0])
        G, H = self.constraints.evaluate(x)
        return f, ViolationReport.from_values(G[0], H[0], self.constraints.delta)

    def describe(self) -> dict:
        """JSON-ready summary of the problem."""
        return {
            "name": self.name,
            "dimension": self.dimension,
            "type": self.features.type,
            "bounds": [[float(lo), float(hi)] for lo, hi in zip(self.lower, self.upper)],
            "features": {
                "LI": self.features.li,
                "NI": self.features.ni,
                "LE": self.features.le,
                "NE": self.features.ne,
            },
            "known_best": self.known_best,
            "description": self.description,
        }


def make_spec(name, lower, upper, objective, features, *, ineq=None, eq=None,
              known_best=None, known_best_point=None, delta=1e-4, **kwargs) -> ProblemSpec:
    """Convenience constructor wiring the constraint set from ``features``."""
    constraints = ConstraintSet(
        inequality=ineq,
        equality=eq,
        n_ineq=features.n_ineq,
        n_eq=features.n_eq,
        delta=delta,
    )
    return ProblemSpec(
        name=name,
        lower=lower,
        upper=upper,
        objective=objective,
        constraints=constraints,
        features=features,
        known_best=known_best,
        known_best_point=known_best_point,
        **kwargs,
    )
