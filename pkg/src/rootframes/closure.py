"""Reflection orbits of unit-norm frames and the groups they generate.

The orbit sweep stores one sign-canonical representative per line and, at
every sweep, adds all reflections ``sigma_v(w)`` for ``v, w`` in the current
set.  Reflections through orbit vectors are conjugates of the generating
reflections (``g sigma_phi g^-1 = sigma_{g phi}``), so the fixed point is the
orbit of the frame under the group generated by its own reflections.  The
procedure is a semi-decision: a finite group always closes, an infinite one
runs into the cap and is reported as ``cap_exceeded``, never as infinite.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import InvalidInputError
from .frame_analysis import Frame
from .geometry import canonical_sign, dedupe_rows, match_rows, reflection_matrix
from .rng import SplitMix64
from .root_systems import PositiveSystem, RootSystem, positive_subsystem
from .tolerances import DEFAULT_TOL, Tolerances

MAX_VECTORS = 10_000
MAX_SWEEPS = 64
MAX_GROUP_ELEMENTS = 100_000

# rows of the reflection table evaluated at once
_CHUNK = 256


class _GridIndex:
    """Hash set of vectors keyed by their rounding to a fixed grid.

    Coordinates whose scaled value sits close to a half-integer could round
    either way after a tiny perturbation; lookups try both neighbours for
    those coordinates.
    """

    def __init__(self, grid: float):
        self.grid = grid
        self._keys: dict[bytes, int] = {}

    def _keys_for(self, v: np.ndarray) -> list[bytes]:
        scaled = v / self.grid
        base = np.rint(scaled)
        frac = scaled - np.floor(scaled)
        shaky = np.flatnonzero(np.abs(frac - 0.5) < 0.05)
        keys = [base.astype(np.int64).tobytes()]
        for i in shaky[:4]:
            alt = base.copy()
            alt[i] = np.floor(scaled[i]) if base[i] == np.ceil(scaled[i]) else np.ceil(scaled[i])
            keys.append(alt.astype(np.int64).tobytes())
        return keys

    def find(self, v: np.ndarray) -> int:
        for k in self._keys_for(v):
            hit = self._keys.get(k)
            if hit is not None:
                return hit
        return -1

    def add(self, v: np.ndarray, value: int) -> None:
        self._keys[np.rint(v / self.grid).astype(np.int64).tobytes()] = value

    def __len__(self) -> int:
        return len(self._keys)


def _first_of_each_key(keys: np.ndarray) -> np.ndarray:
    """Indices of the first occurrence of every distinct row, in input order."""
    order = np.lexsort(keys.T[::-1])
    srt = keys[order]
    fresh = np.ones(len(srt), dtype=bool)
    fresh[1:] = np.any(srt[1:] != srt[:-1], axis=1)
    # lexsort is stable, so each run starts at its smallest original index
    return np.sort(order[fresh])


@dataclass(frozen=True)
class ClosureResult:
    status: Literal["closed", "cap_exceeded"]
    # sign-canonical representatives, one per line; None unless closed
    orbit: np.ndarray | None
    # number of vectors counting +v and -v separately
    orbit_size: int
    iterations: int
    growth_trace: list[int]
    group_order: int | None = None

    @property
    def closed(self) -> bool:
        return self.status == "closed"

    def root_vectors(self) -> np.ndarray:
        """The orbit together with its negatives."""
        if self.orbit is None:
            raise ValueError("orbit is only available for a closed result")
        return np.vstack([self.orbit, -self.orbit])


def _check_unit(F: Frame, eps: float) -> None:
    bad = np.flatnonzero(np.abs(F.norms - 1.0) > eps)
    if bad.size:
        raise InvalidInputError(
            f"vector {int(bad[0])} has norm {F.norms[bad[0]]:.17g}; reflection closure needs unit vectors"
        )


def reflection_closure(
    F: Frame,
    max_vectors: int = MAX_VECTORS,
    max_sweeps: int = MAX_SWEEPS,
    tol: Tolerances = DEFAULT_TOL,
) -> ClosureResult:
    """Sweep reflections to a fixed point, or stop at the cap.

    Stops with ``cap_exceeded`` as soon as the (signed) orbit size exceeds
    ``max_vectors`` or ``max_sweeps`` sweeps were not enough.  The growth
    trace records the signed orbit size before the first sweep and after
    each one.
    """
    if max_vectors < 1 or max_sweeps < 1:
        raise InvalidInputError("caps must be positive")
    eps = tol.match
    _check_unit(F, eps)

    start = canonical_sign(F.vectors, eps)
    uniq, _ = dedupe_rows(start, eps)
    if len(uniq) < len(start):
        warnings.warn(
            f"collapsed {len(start) - len(uniq)} duplicate vector(s) (up to sign) before closure",
            stacklevel=2,
        )

    index = _GridIndex(tol.grid)
    stored: list[np.ndarray] = []

    def insert(c: np.ndarray) -> bool:
        # c must already be sign-canonical
        if index.find(c) >= 0 or index.find(-c) >= 0:
            return False
        index.add(c, len(stored))
        stored.append(c)
        return True

    for v in uniq:
        insert(v)

    trace = [2 * len(stored)]
    frontier_start = 0
    sweeps = 0
    while True:
        if 2 * len(stored) > max_vectors or sweeps >= max_sweeps:
            return ClosureResult("cap_exceeded", None, 2 * len(stored), sweeps, trace)
        sweeps += 1
        V = np.array(stored)
        n_old = len(V)
        # pairs with both ends older than the frontier were handled last sweep
        new = V[frontier_start:]
        over = False
        for axes, points in ((new, V), (V[:frontier_start], new)):
            for a0 in range(0, len(axes), _CHUNK):
                ax = axes[a0 : a0 + _CHUNK]
                coef = 2.0 * (ax @ points.T)
                images = (points[None, :, :] - coef[:, :, None] * ax[:, None, :]).reshape(-1, V.shape[1])
                images = canonical_sign(images, eps)
                for i in _first_of_each_key(np.rint(images / tol.grid).astype(np.int64)):
                    insert(images[i])
                if 2 * len(stored) > max_vectors:
                    over = True
                    break
            if over:
                break
        trace.append(2 * len(stored))
        if over:
            return ClosureResult("cap_exceeded", None, 2 * len(stored), sweeps, trace)
        if len(stored) == n_old:
            orbit = np.array(stored)
            orbit.setflags(write=False)
            return ClosureResult("closed", orbit, 2 * len(stored), sweeps, trace)
        frontier_start = n_old


@dataclass(frozen=True)
class RootFrameVerdict:
    verdict: Literal["yes", "no_span", "unknown_cap"]
    closure: ClosureResult
    root_system: RootSystem | None = None
    positive_system: PositiveSystem | None = None
    # input vectors (as given, with sign) that landed in the positive system
    contained: list[int] = field(default_factory=list)


def _positive_system_for(R: RootSystem, F: Frame, eps: float, seed: int = 0) -> tuple[PositiveSystem, list[int]]:
    """Positive system of R containing as many input vectors (with their sign) as possible.

    Candidates are the sum of the inputs, small seeded perturbations of it,
    and seeded random functionals; the first best one wins.
    """
    rng = SplitMix64(seed)
    total = F.vectors.sum(axis=0)
    scale = float(np.linalg.norm(total))
    candidates = []
    if scale > eps:
        base = total / scale
        candidates.append(base)
        for mag in (1e-6, 1e-4, 1e-2, 1e-1):
            for _ in range(4):
                candidates.append(base + mag * rng.unit_vector(R.dim))
    candidates += [rng.unit_vector(R.dim) for _ in range(64)]

    best: tuple[int, PositiveSystem, list[int]] | None = None
    for b in candidates:
        s = R.roots @ b
        if np.any(np.abs(s) <= eps):
            continue
        hits = [k for k, v in enumerate(F.vectors) if float(v @ b) > eps]
        if best is None or len(hits) > best[0]:
            best = (len(hits), positive_subsystem(R, beta=b, eps=eps), hits)
            if len(hits) == len(F):
                break
    if best is None:
        P = positive_subsystem(R, seed=seed, eps=eps)
        return P, [k for k, v in enumerate(F.vectors) if float(v @ P.beta) > eps]
    return best[1], best[2]


def is_root_frame_closure(
    F: Frame,
    max_vectors: int = MAX_VECTORS,
    max_sweeps: int = MAX_SWEEPS,
    tol: Tolerances = DEFAULT_TOL,
) -> RootFrameVerdict:
    """Decide whether F sits inside a root frame via its reflection orbit.

    ``yes`` comes with the enclosing root system and a positive subsystem;
    ``no_span`` means the orbit is a root system that does not span;
    ``unknown_cap`` means the sweep hit its cap and finiteness is undecided.
    """
    result = reflection_closure(F, max_vectors, max_sweeps, tol)
    if not result.closed:
        return RootFrameVerdict("unknown_cap", result)
    R = RootSystem(result.root_vectors(), family_tag="custom", normalized=True, eps=tol.match)
    smin = np.linalg.svd(result.orbit, compute_uv=False)
    if len(smin) < F.dim or smin[-1] <= 1e-9:
        return RootFrameVerdict("no_span", result, R)
    P, contained = _positive_system_for(R, F, tol.match)
    return RootFrameVerdict("yes", result, R, P, contained)


@dataclass(frozen=True)
class GroupEnumeration:
    status: Literal["complete", "cap_exceeded"]
    order: int | None
    elements_seen: int
    # every generator maps the root set onto itself
    preserves_roots: bool


def group_enumerate(
    R: RootSystem,
    max_elements: int = MAX_GROUP_ELEMENTS,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 0,
) -> GroupEnumeration:
    """Breadth-first enumeration of the group generated by the root reflections.

    Generators are the reflections through a positive subsystem; elements
    are orthogonal matrices deduplicated on the rounding grid.
    """
    P = positive_subsystem(R, seed=seed, eps=tol.match)
    gens = [reflection_matrix(a) for a in P.positives]

    preserves = all(
        np.all(match_rows(R.roots @ g.T, R.roots, tol.match) >= 0) for g in gens
    )

    def key(M: np.ndarray) -> bytes:
        return np.rint(M / tol.grid).astype(np.int64).tobytes()

    ident = np.eye(R.dim)
    seen = {key(ident)}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s @ g
                k = key(h)
                if k in seen:
                    continue
                seen.add(k)
                if len(seen) > max_elements:
                    return GroupEnumeration("cap_exceeded", None, len(seen), preserves)
                nxt.append(h)
        frontier = nxt
    return GroupEnumeration("complete", len(seen), len(seen), preserves)
