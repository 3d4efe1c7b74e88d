"""Frame operators, spectra, eigenframes and Parseval rescaling.

A :class:`Frame` is an ordered list of nonzero vectors with optional positive
weights.  Weights enter only through the rank-one terms ``w * phi phi^T``;
stored vectors are never rescaled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, InvalidWeightError, NotAFrameError, NotAnEigenframeError
from .geometry import match_rows_signed, reflect_all, sign_symmetrize
from .root_systems import PositiveSystem, verify_root_system
from .tolerances import DEFAULT_TOL, Tolerances


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Frame:
    """Finite list of nonzero vectors in R^dim with positive weights.

    ``tag`` and ``beta`` are metadata carried through the interchange format.
    """

    vectors: np.ndarray
    weights: np.ndarray | None = None
    tag: str | None = None
    beta: np.ndarray | None = None

    def __post_init__(self):
        raw = np.asarray(self.vectors)
        if np.iscomplexobj(raw):
            raise InvalidInputError("frame vectors must be real")
        try:
            v = np.asarray(raw, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"frame vectors must be real numbers: {exc}") from exc
        if v.ndim != 2 or v.shape[0] == 0 or v.shape[1] == 0:
            raise InvalidInputError("a frame needs at least one vector of positive dimension")
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("frame vectors must be finite")
        zero = np.flatnonzero(~np.any(v != 0.0, axis=1))
        if zero.size:
            raise InvalidInputError(f"vector {int(zero[0])} is zero")
        if self.weights is None:
            w = np.ones(len(v))
        else:
            w = np.asarray(self.weights, dtype=float).reshape(-1)
            if w.shape != (len(v),):
                raise InvalidWeightError(f"expected {len(v)} weights, got {w.size}")
            bad = np.flatnonzero(~(np.isfinite(w) & (w > 0)))
            if bad.size:
                raise InvalidWeightError(f"weight {int(bad[0])} is not positive: {w[bad[0]]!r}")
        object.__setattr__(self, "vectors", _frozen(v))
        object.__setattr__(self, "weights", _frozen(w))
        if self.beta is not None:
            b = np.asarray(self.beta, dtype=float).reshape(-1)
            if b.shape != (v.shape[1],):
                raise InvalidInputError(f"beta must have length {v.shape[1]}")
            object.__setattr__(self, "beta", _frozen(b))

    @classmethod
    def from_positive_system(cls, P: PositiveSystem, tag: str | None = None) -> "Frame":
        return cls(P.positives, tag=tag if tag is not None else P.parent.family_tag, beta=P.beta)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    @property
    def is_weighted(self) -> bool:
        return bool(np.any(self.weights != 1.0))

    def is_unit_norm(self, eps: float = DEFAULT_TOL.match) -> bool:
        return bool(np.all(np.abs(self.norms - 1.0) <= eps))

    def is_frame(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        ev = np.linalg.eigvalsh(frame_operator(self))
        return bool(ev[0] > tol.frame * ev[-1])

    def with_weights(self, weights) -> "Frame":
        return Frame(self.vectors, weights, tag=self.tag, beta=self.beta)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        same_beta = (self.beta is None and other.beta is None) or (
            self.beta is not None and other.beta is not None and np.array_equal(self.beta, other.beta)
        )
        return (
            self.vectors.shape == other.vectors.shape
            and np.array_equal(self.vectors, other.vectors)
            and np.array_equal(self.weights, other.weights)
            and self.tag == other.tag
            and same_beta
        )

    __hash__ = None  # type: ignore[assignment]


def frame_operator(F: Frame) -> np.ndarray:
    """``S = sum_k w_k phi_k phi_k^T``, symmetrized."""
    S = (F.vectors * F.weights[:, None]).T @ F.vectors
    return 0.5 * (S + S.T)


def frame_bounds(F: Frame) -> tuple[float, float]:
    """Optimal frame bounds: extreme eigenvalues of the frame operator."""
    ev = np.linalg.eigvalsh(frame_operator(F))
    return float(ev[0]), float(ev[-1])


def lambda_by_sum(F: Frame, k: int) -> float:
    """``sum_j w_j <phi_k, phi_j>^2``; equals ``<S phi_k, phi_k>``."""
    if not -len(F) <= k < len(F):
        raise IndexError(f"frame vector index {k} out of range for {len(F)} vectors")
    ip = F.vectors @ F.vectors[k]
    return float(np.sum(F.weights * ip * ip))


@dataclass(frozen=True)
class EigenCluster:
    value: float
    multiplicity: int
    basis: np.ndarray  # dim x multiplicity, orthonormal columns

    @property
    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T


@dataclass(frozen=True)
class VectorAssignment:
    index: int
    cluster: int
    eigenvalue: float
    # ||S phi - lambda phi|| / ||phi||
    residual: float
    # <S phi, phi> / ||phi||^2
    rayleigh: float


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: np.ndarray  # descending
    eigen_clusters: list[EigenCluster]
    per_vector: list[VectorAssignment]
    optimal_bounds: tuple[float, float]
    is_frame: bool
    is_tight: bool
    is_eigenframe: bool
    # N / dim (weighted: sum w ||phi||^2 / dim) lies in [A, B]
    average_bound: float
    bounds_sandwich: bool
    # max |assigned eigenvalue - Rayleigh quotient|; for unit-norm root
    # frames the Rayleigh quotient is the explicit sum of squared products
    lambda_discrepancy: float

    @property
    def max_residual(self) -> float:
        return max(a.residual for a in self.per_vector)

    def members(self, cluster: int) -> list[int]:
        return [a.index for a in self.per_vector if a.cluster == cluster]


def _cluster(S: np.ndarray, tol: Tolerances) -> tuple[np.ndarray, list[EigenCluster]]:
    w, U = np.linalg.eigh(S)
    order = np.argsort(w)[::-1]
    w, U = w[order], U[:, order]
    B = max(float(w[0]), 0.0)
    gap = max(tol.cluster_gap * B, tol.cluster_floor)
    clusters: list[EigenCluster] = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i - 1] - w[i] > gap:
            clusters.append(EigenCluster(float(np.mean(w[start:i])), i - start, U[:, start:i]))
            start = i
    return w, clusters


def spectral_analysis(F: Frame, tol: Tolerances = DEFAULT_TOL) -> SpectralReport:
    """Eigendecompose the frame operator and test every vector as an eigenvector.

    Eigenvalues are clustered (descending, new cluster on a gap larger than
    ``max(1e-6 B, 1e-12)``).  Each vector goes to the cluster that minimizes
    its eigen-residual rather than the nearest eigenvalue.
    """
    S = frame_operator(F)
    w, clusters = _cluster(S, tol)
    A, B = float(w[-1]), float(w[0])

    phi = F.vectors
    norms = F.norms
    Sphi = phi @ S
    rayleigh = np.einsum("ij,ij->i", Sphi, phi) / norms**2
    res = np.stack(
        [np.linalg.norm(Sphi - c.value * phi, axis=1) / norms for c in clusters], axis=1
    )
    best = np.argmin(res, axis=1)
    per_vector = [
        VectorAssignment(
            k,
            int(best[k]),
            clusters[best[k]].value,
            float(res[k, best[k]]),
            float(rayleigh[k]),
        )
        for k in range(len(F))
    ]
    avg = float(np.sum(F.weights * norms**2)) / F.dim
    slack = tol.frame * max(B, 1.0)
    return SpectralReport(
        eigenvalues=w,
        eigen_clusters=clusters,
        per_vector=per_vector,
        optimal_bounds=(A, B),
        is_frame=bool(A > tol.frame * B),
        is_tight=bool(B > 0 and (B - A) / B <= tol.tight),
        is_eigenframe=bool(np.all(res[np.arange(len(F)), best] <= tol.eigen_residual)),
        average_bound=avg,
        bounds_sandwich=bool(A - slack <= avg <= B + slack),
        lambda_discrepancy=float(np.max(np.abs(rayleigh - np.array([a.eigenvalue for a in per_vector])))),
    )


def _require_eigenframe(report: SpectralReport) -> None:
    if not report.is_eigenframe:
        worst = max(report.per_vector, key=lambda a: a.residual)
        raise NotAnEigenframeError(
            f"vector {worst.index} is not an eigenvector of the frame operator "
            f"(residual {worst.residual:.3g})",
            worst_residual=worst.residual,
            worst_index=worst.index,
        )


@dataclass(frozen=True)
class EigenComponent:
    eigenvalue: float
    basis: np.ndarray
    members: list[int]
    # max |(1/lambda) sum_{members} w phi phi^T - P|
    projector_residual: float

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class EigenframeDecomposition:
    components: list[EigenComponent]
    # max |<phi, psi>| over vectors in different components
    cross_gram_norm: float
    # max |sum of component projectors - I|
    completeness_residual: float
    verified: bool


def eigenframe_decomposition(F: Frame, tol: Tolerances = DEFAULT_TOL) -> EigenframeDecomposition:
    """Split an eigenframe into mutually orthogonal tight pieces.

    For each eigenvalue the members rebuild the orthogonal projector onto
    the eigenspace as ``(1/lambda) sum w phi phi^T``.  Clusters with no
    members (only possible when F does not span) are left out.
    """
    report = spectral_analysis(F, tol)
    _require_eigenframe(report)

    components = []
    for c, cl in enumerate(report.eigen_clusters):
        members = report.members(c)
        if not members:
            continue
        phi = F.vectors[members]
        rebuilt = (phi * F.weights[members, None]).T @ phi / cl.value
        resid = float(np.max(np.abs(rebuilt - cl.projector)))
        components.append(EigenComponent(cl.value, cl.basis, members, resid))

    label = np.empty(len(F), dtype=int)
    for i, comp in enumerate(components):
        label[comp.members] = i
    G = F.vectors @ F.vectors.T
    cross = np.abs(G[label[:, None] != label[None, :]])
    cross_norm = float(cross.max()) if cross.size else 0.0

    total = sum(comp.basis @ comp.basis.T for comp in components)
    completeness = float(np.max(np.abs(total - np.eye(F.dim))))
    verified = cross_norm <= tol.projector and all(c.projector_residual <= tol.projector for c in components)
    return EigenframeDecomposition(components, cross_norm, completeness, verified)


@dataclass(frozen=True)
class ParsevalScaling:
    frame: Frame
    eigenvalues: np.ndarray
    # max |sum w' phi phi^T - I|
    residual: float
    # sum_k w_k ||phi_k||^2 / lambda_k, equal to dim; for unit-norm
    # unweighted frames this is sum_k 1 / lambda_k
    reciprocal_sum: float
    dimension_gap: float


def parseval_scaling(F: Frame, tol: Tolerances = DEFAULT_TOL) -> ParsevalScaling:
    """Rescale an eigenframe to a Parseval frame with weights ``w_k / lambda_k``."""
    report = spectral_analysis(F, tol)
    if not report.is_frame:
        A, _ = report.optimal_bounds
        raise NotAFrameError(
            f"frame operator is singular (smallest eigenvalue {A:.3g}); vectors do not span",
            smallest_eigenvalue=A,
        )
    _require_eigenframe(report)
    lam = np.array([a.eigenvalue for a in report.per_vector])
    scaled = F.with_weights(F.weights / lam)
    residual = float(np.max(np.abs(frame_operator(scaled) - np.eye(F.dim))))
    recip = float(np.sum(F.weights * F.norms**2 / lam))
    return ParsevalScaling(scaled, lam, residual, recip, abs(recip - F.dim))


@dataclass(frozen=True)
class ClusterInvariant:
    eigenvalue: float
    multiplicity: int
    members: list[int]
    # |lambda_i d_i - #R_{i,+}|
    count_error: float
    # rank of the member vectors equals the multiplicity
    spans_eigenspace: bool
    # members together with their negatives form a root system
    closed: bool


@dataclass(frozen=True)
class RootFrameInvariants:
    clusters: list[ClusterInvariant]
    is_frame: bool
    is_tight: bool
    optimal_bounds: tuple[float, float]
    positives: int
    sandwich: bool
    trace_error: float
    # max |<alpha, beta>| with alpha, beta in different clusters
    cross_cluster_inner: float
    # max ||S alpha - lambda_alpha alpha|| with lambda_alpha from the explicit sum
    eigenvector_defect: float

    @property
    def count_identity(self) -> bool:
        return all(c.count_error <= 1e-6 for c in self.clusters)

    @property
    def passed(self) -> bool:
        return (
            self.count_identity
            and self.sandwich
            and self.trace_error <= 1e-9
            and self.cross_cluster_inner <= 1e-8
            and all(c.closed and c.spans_eigenspace for c in self.clusters)
        )


def root_frame_invariants(P: PositiveSystem, tol: Tolerances = DEFAULT_TOL) -> RootFrameInvariants:
    """Check the spectral identities a unit-norm positive system must satisfy.

    Per eigenvalue: ``lambda_i * d_i == #R_{i,+}`` and the roots in the
    cluster form a sub-root system.  Globally: ``A <= #R_+/d <= B``,
    ``trace S == #R_+``, clusters mutually orthogonal.  A non-spanning
    system is flagged via ``is_frame`` rather than raised.
    """
    F = Frame(P.positives)
    if not F.is_unit_norm(tol.match):
        raise InvalidInputError("root_frame_invariants expects unit-norm roots")
    report = spectral_analysis(F, tol)
    S = frame_operator(F)
    phi = F.vectors

    clusters = []
    for c, cl in enumerate(report.eigen_clusters):
        members = report.members(c)
        if not members:
            # zero eigenspace of a non-spanning system; nothing to count
            continue
        sub = phi[members]
        rank = int(np.linalg.matrix_rank(sub, tol=1e-8))
        closed = verify_root_system(sign_symmetrize(sub, tol.match), tol.match).passed
        clusters.append(
            ClusterInvariant(
                cl.value,
                cl.multiplicity,
                members,
                abs(cl.value * cl.multiplicity - len(members)),
                rank == cl.multiplicity,
                closed,
            )
        )

    label = np.full(len(F), -1)
    for i, c in enumerate(clusters):
        label[c.members] = i
    G = np.abs(phi @ phi.T)
    cross = G[label[:, None] != label[None, :]]

    lam_sum = np.array([lambda_by_sum(F, k) for k in range(len(F))])
    defect = float(np.max(np.linalg.norm(phi @ S - lam_sum[:, None] * phi, axis=1)))

    A, B = report.optimal_bounds
    n = len(F)
    return RootFrameInvariants(
        clusters=clusters,
        is_frame=report.is_frame,
        is_tight=report.is_tight,
        optimal_bounds=(A, B),
        positives=n,
        sandwich=bool(A - 1e-9 <= n / F.dim <= B + 1e-9),
        trace_error=abs(float(np.trace(S)) - n),
        cross_cluster_inner=float(cross.max()) if cross.size else 0.0,
        eigenvector_defect=defect,
    )


@dataclass(frozen=True)
class SparkFailure:
    k: int
    l: int
    reflected: np.ndarray


@dataclass(frozen=True)
class SparkObstruction:
    failures: list[SparkFailure]
    pairs_checked: int
    note: str = (
        "an empty failure list is necessary, not sufficient, for the frame "
        "and its negatives to form a root system"
    )

    @property
    def passed(self) -> bool:
        return not self.failures


def spark_obstruction(F: Frame, eps: float = DEFAULT_TOL.match) -> SparkObstruction:
    """Look for pairs whose reflection is not (up to sign) another frame vector.

    Pairs with ``|<phi_k, phi_l>| <= eps`` are skipped because the reflection
    fixes ``phi_l``.  A frame contained in a root frame has no failures, and
    every matched pair is a linearly dependent triple.
    """
    if len(F) < 2:
        raise InvalidInputError("spark obstruction needs at least two vectors")
    phi = F.vectors
    failures: list[SparkFailure] = []
    checked = 0
    for k in range(len(F)):
        ip = phi @ phi[k]
        cand = [l for l in range(len(F)) if l != k and abs(ip[l]) > eps]
        if not cand:
            continue
        checked += len(cand)
        images = reflect_all(phi[k], phi[cand])[0]
        idx = match_rows_signed(images, phi, eps)
        for l, img, j in zip(cand, images, idx):
            if j < 0:
                failures.append(SparkFailure(k, l, img))
    return SparkObstruction(failures, checked)


@dataclass(frozen=True)
class GramReport:
    gram: np.ndarray
    # permutation grouping vectors by eigenvalue cluster (None if not applicable)
    order: list[int] | None
    block_sizes: list[int] | None
    off_block_max: float | None
    # None when the frame is not an eigenframe
    block_diagonal: bool | None


def gram_analysis(F: Frame, tol: Tolerances = DEFAULT_TOL) -> GramReport:
    """Weighted Gram matrix and, for eigenframes, its block structure by cluster."""
    sw = np.sqrt(F.weights)
    G = (F.vectors @ F.vectors.T) * np.outer(sw, sw)
    report = spectral_analysis(F, tol)
    if not report.is_eigenframe:
        return GramReport(G, None, None, None, None)
    order, sizes = [], []
    for c in range(len(report.eigen_clusters)):
        m = report.members(c)
        if m:
            order.extend(m)
            sizes.append(len(m))
    Gp = G[np.ix_(order, order)]
    mask = np.ones_like(Gp, dtype=bool)
    start = 0
    for s in sizes:
        mask[start : start + s, start : start + s] = False
        start += s
    off = float(np.max(np.abs(Gp[mask]))) if mask.any() else 0.0
    return GramReport(G, order, sizes, off, off <= tol.projector)


@dataclass(frozen=True)
class DistinctVector:
    index: int  # first occurrence
    occurrences: list[int]
    eigenvalue: float
    # weighted count of appearances times ||u||^2
    bound: float
    holds: bool
    equality: bool
    orthogonal_to_rest: bool

    @property
    def consistent(self) -> bool:
        """Equality holds exactly when u is orthogonal to every other distinct vector."""
        return self.equality == self.orthogonal_to_rest


@dataclass(frozen=True)
class MultiplicityReport:
    vectors: list[DistinctVector]
    # per cluster with members: |lambda_n d_n - sum w ||phi||^2|
    trace_errors: list[float]

    @property
    def passed(self) -> bool:
        return all(v.holds and v.consistent for v in self.vectors) and all(
            e <= 1e-8 for e in self.trace_errors
        )


def _distinct_groups(vectors: np.ndarray, eps: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for k, v in enumerate(vectors):
        for g in groups:
            if np.max(np.abs(vectors[g[0]] - v)) <= eps:
                g.append(k)
                break
        else:
            groups.append([k])
    return groups


def multiplicity_bound_check(F: Frame, tol: Tolerances = DEFAULT_TOL) -> MultiplicityReport:
    """Eigenvalue lower bound from repeated vectors, with its equality case.

    For a vector u appearing c times, its eigenvalue is at least
    ``c * ||u||^2``, with equality exactly when u is orthogonal to all other
    distinct frame vectors.  ``u`` and ``-u`` count as different vectors.
    """
    report = spectral_analysis(F, tol)
    _require_eigenframe(report)
    phi, w = F.vectors, F.weights
    eps = tol.match
    groups = _distinct_groups(phi, eps)

    out = []
    for g in groups:
        u = phi[g[0]]
        lam = report.per_vector[g[0]].eigenvalue
        bound = float(np.sum(w[g])) * float(u @ u)
        others = [k for k in range(len(F)) if k not in g]
        ortho = all(abs(float(u @ phi[k])) <= eps for k in others)
        slack = tol.frame * max(1.0, lam)
        out.append(
            DistinctVector(
                g[0],
                g,
                lam,
                bound,
                holds=lam >= bound - slack,
                equality=abs(lam - bound) <= slack,
                orthogonal_to_rest=ortho,
            )
        )

    trace_errors = []
    for c, cl in enumerate(report.eigen_clusters):
        m = report.members(c)
        if m:
            trace_errors.append(abs(cl.value * cl.multiplicity - float(np.sum(w[m] * F.norms[m] ** 2))))
    return MultiplicityReport(out, trace_errors)


@dataclass(frozen=True)
class CommutationReport:
    # max_k max-entry of S sigma_k - sigma_k S
    reflection_defect: float
    # max_k max-entry of S phi phi^T - phi phi^T S
    projector_defect: float
    threshold: float

    @property
    def commutes(self) -> bool:
        return self.reflection_defect <= self.threshold and self.projector_defect <= self.threshold


def commutation_check(F: Frame, tol: Tolerances = DEFAULT_TOL) -> CommutationReport:
    """Does S commute with every reflection ``sigma_k`` and every ``phi_k phi_k^T``?

    Either holds exactly when F is an eigenframe.
    """
    S = frame_operator(F)
    B = float(np.linalg.eigvalsh(S)[-1])
    refl = proj = 0.0
    eye = np.eye(F.dim)
    for phi in F.vectors:
        P = np.outer(phi, phi)
        sigma = eye - 2.0 * P / float(phi @ phi)
        refl = max(refl, float(np.max(np.abs(S @ sigma - sigma @ S))))
        proj = max(proj, float(np.max(np.abs(S @ P - P @ S))))
    return CommutationReport(refl, proj, tol.commutation * B)
