"""Classical root systems, the root-system axiom, positive subsystems and orbits."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    DegenerateFunctionalError,
    InternalError,
    InvalidInputError,
    InvalidParameterError,
    InvalidWeightError,
)
from .geometry import match_rows, reflect_all
from .rng import SplitMix64
from .tolerances import DEFAULT_TOL, Tolerances

FAMILIES = ("A", "B", "C", "D", "I2")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 2, "I2": 2}
BETA_RETRIES = 64


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Violation:
    """``reflect(alpha, beta)`` is not in the set."""

    alpha: int
    beta: int
    reflected: np.ndarray


@dataclass(frozen=True)
class RootSystemCheck:
    passed: bool
    missing_negatives: list[int]
    violations: list[Violation]

    def __bool__(self) -> bool:
        return self.passed


def verify_root_system(vectors, eps: float = DEFAULT_TOL.match) -> RootSystemCheck:
    """Check sign symmetry and closure under every reflection ``sigma_alpha``.

    Every violating ordered pair is reported, so the result can be used as a
    witness list and not just a boolean.
    """
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    if v.ndim != 2:
        raise InvalidInputError("expected a list of vectors")
    norms = np.linalg.norm(v, axis=1)
    if np.any(norms <= eps):
        bad = int(np.flatnonzero(norms <= eps)[0])
        raise InvalidInputError(f"vector {bad} is zero")

    missing = [int(i) for i in np.flatnonzero(match_rows(-v, v, eps) < 0)]

    violations: list[Violation] = []
    # one axis at a time keeps the temporary at n x dim
    for a in range(len(v)):
        images = reflect_all(v[a], v)[0]
        idx = match_rows(images, v, eps)
        for b in np.flatnonzero(idx < 0):
            violations.append(Violation(a, int(b), images[b].copy()))
    return RootSystemCheck(not missing and not violations, missing, violations)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A finite sign-symmetric set of nonzero vectors closed under its reflections.

    Construction verifies the axiom; an invalid set raises
    :class:`InvalidInputError`.
    """

    roots: np.ndarray
    family_tag: str | None = None
    rank_or_n: int | None = None
    normalized: bool = False
    eps: float = DEFAULT_TOL.match

    def __post_init__(self):
        r = np.atleast_2d(np.asarray(self.roots, dtype=float))
        if r.ndim != 2 or r.shape[1] == 0:
            raise InvalidInputError("roots must be a nonempty list of vectors")
        if not np.all(np.isfinite(r)):
            raise InvalidInputError("roots must be finite")
        check = verify_root_system(r, self.eps)
        if not check.passed:
            what = (
                f"root {check.missing_negatives[0]} has no negative"
                if check.missing_negatives
                else "reflection of root {0.beta} through root {0.alpha} is not a root".format(
                    check.violations[0]
                )
            )
            raise InvalidInputError(f"not a root system: {what}")
        object.__setattr__(self, "roots", _frozen(r))

    @property
    def dim(self) -> int:
        return self.roots.shape[1]

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def is_unit(self) -> bool:
        return bool(np.allclose(np.linalg.norm(self.roots, axis=1), 1.0, rtol=0, atol=self.eps))

    @property
    def rank(self) -> int:
        """Dimension of the span of the roots."""
        return int(np.linalg.matrix_rank(self.roots, tol=1e-9))

    def index_of(self, vector) -> int:
        return int(match_rows(vector, self.roots, self.eps)[0])


def _classical_positives(family: str, n: int) -> tuple[int, list[np.ndarray]]:
    """Positive roots in the usual ordering, unnormalized."""
    if family == "I2":
        # i * w^j with w = exp(i pi / n), identified with R^2
        return 2, [
            np.array([-math.sin(j * math.pi / n), math.cos(j * math.pi / n)]) for j in range(n)
        ]
    dim = n + 1 if family == "A" else n
    e = np.eye(dim)
    pos = [e[i] - e[j] for i, j in itertools.combinations(range(dim), 2)]
    if family in ("B", "C", "D"):
        pos += [e[i] + e[j] for i, j in itertools.combinations(range(dim), 2)]
    if family == "B":
        pos += [e[i] for i in range(dim)]
    elif family == "C":
        pos += [2.0 * e[i] for i in range(dim)]
    return dim, pos


def construct_classical(family: str, rank_or_n: int, normalize: bool = False) -> RootSystem:
    """Build the full root system of type A_n, B_n, C_n, D_n or I2(n).

    A_n lives in R^(n+1) and does not span it.  With ``normalize`` every root
    is divided by its computed norm, which makes C_n coincide with B_n; the
    requested family is kept in ``family_tag``.  Positive roots come first,
    followed by their negatives in the same order.
    """
    fam = str(family).upper()
    if fam not in FAMILIES:
        raise InvalidParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if isinstance(rank_or_n, bool) or int(rank_or_n) != rank_or_n:
        raise InvalidParameterError(f"rank must be an integer, got {rank_or_n!r}")
    n = int(rank_or_n)
    if n < _MIN_RANK[fam]:
        raise InvalidParameterError(f"{fam} requires rank >= {_MIN_RANK[fam]}, got {n}")

    _, pos = _classical_positives(fam, n)
    pos_arr = np.array(pos)
    if normalize:
        pos_arr = pos_arr / np.linalg.norm(pos_arr, axis=1)[:, None]
    # 0.0 - x rather than -x keeps zero coordinates positive in documents
    return RootSystem(np.vstack([pos_arr, 0.0 - pos_arr]), family_tag=fam, rank_or_n=n, normalized=normalize)


def direct_sum(*systems: RootSystem) -> RootSystem:
    """Orthogonal union: each system occupies its own block of coordinates."""
    if not systems:
        raise InvalidParameterError("direct_sum needs at least one system")
    dim = sum(s.dim for s in systems)
    rows = []
    offset = 0
    for s in systems:
        block = np.zeros((len(s), dim))
        block[:, offset : offset + s.dim] = s.roots
        rows.append(block)
        offset += s.dim
    tag = "+".join(f"{s.family_tag or 'custom'}{s.rank_or_n or ''}" for s in systems)
    return RootSystem(np.vstack(rows), family_tag=tag, normalized=all(s.normalized for s in systems))


@dataclass(frozen=True, eq=False)
class PositiveSystem:
    parent: RootSystem
    beta: np.ndarray
    indices: tuple[int, ...]

    @property
    def positives(self) -> np.ndarray:
        return self.parent.roots[list(self.indices)]

    @property
    def dim(self) -> int:
        return self.parent.dim

    def __len__(self) -> int:
        return len(self.indices)


def _split(R: RootSystem, beta: np.ndarray, eps: float):
    s = R.roots @ beta
    return s, np.flatnonzero(np.abs(s) <= eps)


def positive_subsystem(
    R: RootSystem,
    beta=None,
    seed: int | None = None,
    eps: float = DEFAULT_TOL.match,
) -> PositiveSystem:
    """Select ``{alpha : <alpha, beta> > 0}``.

    Without ``beta`` a functional is drawn from the unit sphere with a
    SplitMix64 generator seeded by ``seed`` (default 0), retrying up to 64
    times until no root is within ``eps`` of orthogonal to it.
    """
    if beta is not None:
        b = np.asarray(beta, dtype=float).reshape(-1)
        if b.shape != (R.dim,):
            raise InvalidInputError(f"beta must have length {R.dim}")
        s, bad = _split(R, b, eps)
        if bad.size:
            raise DegenerateFunctionalError(
                f"root {int(bad[0])} is orthogonal to beta", root_index=int(bad[0])
            )
    else:
        rng = SplitMix64(0 if seed is None else seed)
        for _ in range(BETA_RETRIES):
            b = rng.unit_vector(R.dim)
            s, bad = _split(R, b, eps)
            if not bad.size:
                break
        else:
            raise InternalError(f"no generic functional found in {BETA_RETRIES} draws")

    idx = tuple(int(i) for i in np.flatnonzero(s > 0))
    if 2 * len(idx) != len(R):
        raise InternalError(f"selected {len(idx)} of {len(R)} roots; root set is not sign-symmetric")
    return PositiveSystem(R, _frozen(b), idx)


@dataclass(frozen=True)
class OrbitPartition:
    """Reflection-group orbits of a root system, as tuples of root indices."""

    classes: tuple[tuple[int, ...], ...]

    def class_of(self, index: int) -> int:
        for c, members in enumerate(self.classes):
            if index in members:
                return c
        raise IndexError(index)


def orbit_partition(R: RootSystem) -> OrbitPartition:
    """Connected components of the graph ``alpha -- sigma_gamma(alpha)``.

    Reflections generate the group, so these components are exactly the
    group orbits.
    """
    n = len(R)
    src, dst = [], []
    for g in range(n):
        images = reflect_all(R.roots[g], R.roots)[0]
        idx = match_rows(images, R.roots, R.eps)
        if np.any(idx < 0):
            raise InternalError("root system lost closure while partitioning")
        src.extend(range(n))
        dst.extend(idx.tolist())
    graph = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(i)
    classes = sorted((tuple(g) for g in groups.values()), key=lambda c: c[0])
    return OrbitPartition(tuple(classes))


@dataclass(frozen=True)
class ParameterFunctionReport:
    passed: bool
    # (min, max) of the weights on each orbit
    orbit_ranges: list[tuple[float, float]]
    failing_orbits: list[int]


def validate_parameter_function(
    R: RootSystem,
    k: Mapping[int, float] | Sequence[float],
    tol: Tolerances = DEFAULT_TOL,
) -> ParameterFunctionReport:
    """Check that per-root weights ``k`` are constant on every reflection orbit."""
    if isinstance(k, Mapping):
        missing = [i for i in range(len(R)) if i not in k]
        if missing:
            raise InvalidWeightError(f"parameter function has no value for root {missing[0]}")
        values = np.array([float(k[i]) for i in range(len(R))])
    else:
        values = np.asarray(k, dtype=float)
        if values.shape != (len(R),):
            raise InvalidWeightError(f"expected {len(R)} weights, got {values.size}")
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        bad = int(np.flatnonzero(~(values > 0))[0])
        raise InvalidWeightError(f"weight of root {bad} is not positive: {values[bad]!r}")

    part = orbit_partition(R)
    ranges, failing = [], []
    for c, members in enumerate(part.classes):
        w = values[list(members)]
        lo, hi = float(w.min()), float(w.max())
        ranges.append((lo, hi))
        if hi - lo > tol.parameter * hi:
            failing.append(c)
    return ParameterFunctionReport(not failing, ranges, failing)
