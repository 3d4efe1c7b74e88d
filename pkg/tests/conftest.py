from __future__ import annotations

import math

import numpy as np
import pytest

from rootframes import Frame, construct_classical, direct_sum, positive_subsystem

SQRT2 = math.sqrt(2.0)

# (family, rank) pairs used as root-frame fixtures across the suite
CLASSICAL = (
    [("B", d) for d in range(2, 7)]
    + [("C", d) for d in range(2, 5)]
    + [("D", d) for d in range(2, 6)]
    + [("I2", n) for n in range(2, 13)]
)
# spanning only in their own span, not in the ambient space
DEGENERATE = [("A", d - 1) for d in range(3, 7)]

ACCEPTANCE_LINES: list[str] = []


def positives(family: str, n: int, seed: int = 0) -> Frame:
    R = construct_classical(family, n, normalize=True)
    return Frame(positive_subsystem(R, seed=seed).positives)


def union_b2_i23() -> Frame:
    R = direct_sum(construct_classical("B", 2, normalize=True), construct_classical("I2", 3))
    return Frame(positive_subsystem(R, seed=0).positives)


def e1_plus_i23() -> Frame:
    """{e1} together with the three I2(3) positives placed in coordinates 2-3."""
    tri = construct_classical("I2", 3).roots[:3]
    rows = [[1.0, 0.0, 0.0]] + [[0.0, x, y] for x, y in tri]
    return Frame(rows)


def non_eigenframe() -> Frame:
    return Frame([[1.0, 0.0], [1 / SQRT2, 1 / SQRT2], [0.0, 1.0]])


def brute_reflect(alpha, x):
    """Reflection written out coordinate by coordinate."""
    nn = sum(a * a for a in alpha)
    c = 2.0 * sum(a * b for a, b in zip(alpha, x)) / nn
    return [xi - c * ai for xi, ai in zip(x, alpha)]


def brute_contains(vectors, v, eps=1e-9):
    return any(all(abs(a - b) <= eps for a, b in zip(w, v)) for w in vectors)


def brute_violations(vectors, eps=1e-9):
    """Every ordered pair (i, j) whose reflection leaves the set; plain loops."""
    vs = [list(map(float, v)) for v in vectors]
    out = []
    for i, a in enumerate(vs):
        for j, b in enumerate(vs):
            if not brute_contains(vs, brute_reflect(a, b), eps):
                out.append((i, j))
    return out


def brute_frame_operator(vectors, weights=None):
    vs = np.asarray(vectors, dtype=float)
    w = np.ones(len(vs)) if weights is None else np.asarray(weights, dtype=float)
    d = vs.shape[1]
    S = [[0.0] * d for _ in range(d)]
    for k, v in enumerate(vs):
        for i in range(d):
            for j in range(d):
                S[i][j] += w[k] * v[i] * v[j]
    return np.array(S)


@pytest.fixture
def b2_frame() -> Frame:
    return positives("B", 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
