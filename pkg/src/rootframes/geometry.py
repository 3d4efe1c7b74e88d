"""Reflections and tolerant vector matching."""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from .errors import InvalidInputError

def reflect(alpha, x) -> np.ndarray:
    """Reflect ``x`` through the hyperplane orthogonal to ``alpha``.

    >>> reflect([1.0, 0.0], [1.0, 2.0])
    array([-1.,  2.])
    """
    a = np.asarray(alpha, dtype=float)
    v = np.asarray(x, dtype=float)
    nn = float(a @ a)
    if nn == 0.0:
        raise InvalidInputError("cannot reflect through the zero vector")
    return v - (2.0 * float(v @ a) / nn) * a


def reflection_matrix(alpha) -> np.ndarray:
    a = np.asarray(alpha, dtype=float)
    nn = float(a @ a)
    if nn == 0.0:
        raise InvalidInputError("cannot reflect through the zero vector")
    return np.eye(a.size) - (2.0 / nn) * np.outer(a, a)


def reflect_all(axes: np.ndarray, points: np.ndarray) -> np.ndarray:
    """All reflections ``sigma_a(p)``; result has shape (len(axes), len(points), dim)."""
    axes = np.atleast_2d(np.asarray(axes, dtype=float))
    points = np.atleast_2d(np.asarray(points, dtype=float))
    coef = 2.0 * (axes @ points.T) / np.einsum("ij,ij->i", axes, axes)[:, None]
    return points[None, :, :] - coef[:, :, None] * axes[:, None, :]


def canonical_sign(vectors: np.ndarray, eps: float) -> np.ndarray:
    """Flip each row so its first coordinate with ``|x| > eps`` is positive."""
    v = np.array(vectors, dtype=float, ndmin=2)
    big = np.abs(v) > eps
    has = big.any(axis=1)
    first = np.argmax(big, axis=1)
    lead = v[np.arange(len(v)), first]
    flip = has & (lead < 0)
    v[flip] *= -1.0
    return v


def match_rows(queries: np.ndarray, table: np.ndarray, eps: float) -> np.ndarray:
    """Index of a table row within ``eps`` (max-norm) of each query, or -1.

    Exact tolerance search with a KD-tree in the Chebyshev metric; this is
    deliberately independent of the grid hashing used by the orbit sweep.
    """
    q = np.atleast_2d(np.asarray(queries, dtype=float))
    t = np.atleast_2d(np.asarray(table, dtype=float))
    out = np.full(len(q), -1, dtype=np.int64)
    if t.size == 0 or q.size == 0:
        return out
    tree = cKDTree(t)
    # distance_upper_bound excludes the bound itself
    _, idx = tree.query(q, k=1, p=np.inf, distance_upper_bound=np.nextafter(eps, np.inf))
    hit = idx < len(t)
    out[hit] = idx[hit]
    return out


def match_rows_signed(queries: np.ndarray, table: np.ndarray, eps: float) -> np.ndarray:
    """Like :func:`match_rows` but a query may match ``+row`` or ``-row``."""
    t = np.atleast_2d(np.asarray(table, dtype=float))
    idx = match_rows(queries, np.vstack([t, -t]), eps)
    return np.where(idx >= 0, idx % len(t), -1)


def dedupe_rows(vectors: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Drop rows equal (within ``eps``) to an earlier row.

    Returns the kept rows and, for every input row, the position of its
    representative among the kept rows.
    """
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    if v.size == 0:
        return v, np.empty(0, dtype=np.int64)
    tree = cKDTree(v)
    rep = np.full(len(v), -1, dtype=np.int64)
    kept: list[int] = []
    for i in range(len(v)):
        if rep[i] >= 0:
            continue
        rep[i] = len(kept)
        for j in tree.query_ball_point(v[i], eps, p=np.inf):
            if j > i and rep[j] < 0:
                rep[j] = len(kept)
        kept.append(i)
    return v[kept], rep


def sign_symmetrize(vectors: np.ndarray, eps: float) -> np.ndarray:
    """``V`` union ``-V`` with duplicates removed, original rows first."""
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    both, _ = dedupe_rows(np.vstack([v, -v]), eps)
    return both
