"""Convergence plots from exported trace files."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .engine import TRACE_COLUMNS
from .errors import CohortOptError, ConfigurationError


def read_trace(path) -> np.ndarray:
    """Load a trace CSV into an ``(n, 5)`` array, validating every row."""
    path = Path(path)
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise CohortOptError(f"{path}: cannot read trace: {exc.strerror or exc}") from exc
    rows = []
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ConfigurationError(f"{path}: empty trace file")
        if tuple(h.strip() for h in header) != TRACE_COLUMNS:
            raise ConfigurationError(f"{path}:1: expected header {','.join(TRACE_COLUMNS)}, got {','.join(header)}")
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(TRACE_COLUMNS):
                raise ConfigurationError(f"{path}:{line}: expected {len(TRACE_COLUMNS)} fields, got {len(row)}")
            try:
                vals = [float(v) for v in row]
            except ValueError:
                raise ConfigurationError(f"{path}:{line}: non-numeric field in {row}") from None
            if vals[0] < 0 or vals[1] < 0 or vals[0] != int(vals[0]) or vals[1] != int(vals[1]):
                raise ConfigurationError(f"{path}:{line}: attempt and candidate must be non-negative integers")
            rows.append(vals)
    if not rows:
        raise ConfigurationError(f"{path}: trace has no data rows")
    return np.asarray(rows, dtype=float)


def plot_trace(trace: np.ndarray, out_path, title: str = "", column: str = "f_q") -> Path:
    """Draw one line per candidate (behavior versus learning attempt) as SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    trace = np.asarray(trace, dtype=float)
    if trace.ndim != 2 or trace.shape[0] == 0:
        raise ConfigurationError("cannot plot an empty trace")
    col = TRACE_COLUMNS.index(column)
    out_path = Path(out_path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for c in np.unique(trace[:, 1]).astype(int):
        rows = trace[trace[:, 1] == c]
        rows = rows[np.argsort(rows[:, 0], kind="stable")]
        ax.plot(rows[:, 0], rows[:, col], marker="o" if len(rows) == 1 else None,
                linewidth=0.9, label=f"candidate {c + 1}")
    ax.set_xlabel("learning attempt")
    ax.set_ylabel("behavior" if column == "f_q" else column)
    if title:
        ax.set_title(title)
    ax.legend(fontsize="small")
    fig.tight_layout()
    try:
        fig.savefig(out_path, format="svg")
    except OSError as exc:
        raise CohortOptError(f"{out_path}: cannot write plot: {exc.strerror or exc}") from exc
    finally:
        plt.close(fig)
    return out_path


def plot_trace_file(trace_path, out_path=None, title: str = "") -> Path:
    trace = read_trace(trace_path)  # raises before any file is written
    trace_path = Path(trace_path)
    if out_path is None:
        out_path = trace_path.with_suffix(".svg")
    return plot_trace(trace, out_path, title=title or trace_path.stem)
