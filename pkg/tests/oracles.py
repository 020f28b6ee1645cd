"""Independent reference solvers used by the tests."""
from itertools import combinations

import numpy as np


def vertex_enumeration(c, c0, A, b, lower, upper, tol=1e-9):
    """Minimize ``c @ x + c0`` subject to ``A x <= b`` and box bounds by brute force.

    Every choice of N active constraints (box faces included) is solved as a
    linear system; the best feasible vertex wins. Returns ``(value, x)``.
    """
    c, A, b = np.asarray(c, float), np.atleast_2d(np.asarray(A, float)), np.asarray(b, float)
    lower, upper = np.asarray(lower, float), np.asarray(upper, float)
    N = c.size
    eye = np.eye(N)
    rows = np.vstack([A, eye, -eye])
    rhs = np.concatenate([b, upper, -lower])
    best = (np.inf, None)
    for active in combinations(range(len(rows)), N):
        M = rows[list(active)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, rhs[list(active)])
        if np.all(rows @ x <= rhs + tol):
            value = float(c @ x + c0)
            if value < best[0]:
                best = (value, x)
    return best


def deepdraw_lp(spec):
    """LP data for a deep-drawing problem, recovered by probing its affine objective."""
    N = spec.dimension
    base = np.zeros((1, N))
    c0 = float(spec.objective(base)[0])
    c = np.array([float(spec.objective(eye[None, :])[0]) - c0 for eye in np.eye(N)])
    # 3 R_D - R_P <= 0 and R_P - 6 R_D <= 0
    A = np.array([[0, 0, 3.0, -1.0], [0, 0, -6.0, 1.0]])
    return c, c0, A, np.zeros(2)


def two_pass_sd(values):
    """Population standard deviation, mean first then squared deviations."""
    values = [float(v) for v in values]
    mean = sum(values) / len(values)
    return (sum((v - mean) ** 2 for v in values) / len(values)) ** 0.5
