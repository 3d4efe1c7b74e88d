"""Turn analysis results into report documents."""

from __future__ import annotations

import numpy as np

from .closure import GroupEnumeration, RootFrameVerdict
from .errors import InvalidInputError
from .frame_analysis import (
    Frame,
    ParsevalScaling,
    SparkObstruction,
    commutation_check,
    eigenframe_decomposition,
    gram_analysis,
    multiplicity_bound_check,
    root_frame_invariants,
    spark_obstruction,
    spectral_analysis,
)
from .geometry import match_rows_signed, sign_symmetrize
from .io_formats import build_report
from .root_systems import (
    PositiveSystem,
    RootSystem,
    RootSystemCheck,
    positive_subsystem,
    verify_root_system,
)
from .tolerances import DEFAULT_TOL, Tolerances


def _vec(v) -> list[float]:
    return [float(x) for x in np.asarray(v).ravel()]


def as_positive_system(F: Frame, tol: Tolerances = DEFAULT_TOL) -> PositiveSystem | None:
    """View F as the positive half of a root system, if it is one.

    Requires unit norm, no two vectors equal up to sign, and F together with
    its negatives closed under reflections.  The frame operator does not
    depend on which half is chosen, so any generic functional will do when F
    carries no usable ``beta``.
    """
    eps = tol.match
    if not F.is_unit_norm(eps) or len(F) < 1:
        return None
    if len(F) > 1:
        for k in range(len(F)):
            others = np.delete(F.vectors, k, axis=0)
            if match_rows_signed(F.vectors[k], others, eps)[0] >= 0:
                return None
    roots = np.vstack([F.vectors, -F.vectors])
    if not verify_root_system(roots, eps).passed:
        return None
    R = RootSystem(roots, family_tag=F.tag or "custom", eps=eps)
    if F.beta is not None and np.all(F.vectors @ F.beta > eps):
        return positive_subsystem(R, beta=F.beta, eps=eps)
    return positive_subsystem(R, seed=0, eps=eps)


def analysis_report(F: Frame, tol: Tolerances = DEFAULT_TOL) -> dict:
    """Consolidated report: spectrum, eigenframe checks, Gram structure, root-frame invariants."""
    spectrum = spectral_analysis(F, tol)
    comm = commutation_check(F, tol)
    gram = gram_analysis(F, tol)
    A, B = spectrum.optimal_bounds

    verdicts: dict[str, bool | None] = {
        "is_frame": spectrum.is_frame,
        "is_tight": spectrum.is_tight,
        "is_eigenframe": spectrum.is_eigenframe,
        "bounds_sandwich": spectrum.bounds_sandwich,
        "commutes": comm.commutes,
        "gram_block_diagonal": gram.block_diagonal,
        "projector_identity": None,
        "multiplicity_bound": None,
        "is_root_frame": None,
        "root_frame_invariants": None,
    }
    residuals = {
        "lower_bound": A,
        "upper_bound": B,
        "max_eigen_residual": spectrum.max_residual,
        "lambda_discrepancy": spectrum.lambda_discrepancy,
        "reflection_commutator": comm.reflection_defect,
        "projector_commutator": comm.projector_defect,
    }
    failures: list[dict] = [
        {"check": "eigenvector", "index": a.index, "residual": a.residual, "vector": _vec(F.vectors[a.index])}
        for a in spectrum.per_vector
        if a.residual > tol.eigen_residual
    ]

    if spectrum.is_eigenframe:
        dec = eigenframe_decomposition(F, tol)
        verdicts["projector_identity"] = dec.verified
        residuals["projector_identity"] = max(c.projector_residual for c in dec.components)
        residuals["cross_gram_norm"] = dec.cross_gram_norm
        residuals["gram_off_block"] = gram.off_block_max
        mult = multiplicity_bound_check(F, tol)
        verdicts["multiplicity_bound"] = mult.passed
        residuals["multiplicity_trace"] = max(mult.trace_errors)
        for v in mult.vectors:
            if not (v.holds and v.consistent):
                failures.append(
                    {
                        "check": "multiplicity_bound",
                        "index": v.index,
                        "eigenvalue": v.eigenvalue,
                        "bound": v.bound,
                        "vector": _vec(F.vectors[v.index]),
                    }
                )

    P = as_positive_system(F, tol)
    verdicts["is_root_frame"] = bool(P is not None and spectrum.is_frame)
    if P is not None:
        inv = root_frame_invariants(P, tol)
        verdicts["root_frame_invariants"] = inv.passed
        residuals["count_identity"] = max(c.count_error for c in inv.clusters)
        residuals["trace_identity"] = inv.trace_error
        residuals["cross_cluster_inner"] = inv.cross_cluster_inner
        residuals["eigenvector_by_sum"] = inv.eigenvector_defect
        for i, c in enumerate(inv.clusters):
            if c.count_error > 1e-6 or not c.closed or not c.spans_eigenspace:
                failures.append(
                    {"check": "root_cluster", "cluster": i, "eigenvalue": c.eigenvalue, "members": list(c.members)}
                )

    clusters = [(c.value, c.multiplicity) for c in spectrum.eigen_clusters]
    return build_report(F, verdicts, clusters, residuals, failures)


def scaling_report(F: Frame, result: ParsevalScaling) -> dict:
    spectrum = spectral_analysis(F)
    return build_report(
        F,
        {"parseval": result.residual <= 1e-9, "reciprocal_sum_identity": result.dimension_gap <= 1e-8},
        [(c.value, c.multiplicity) for c in spectrum.eigen_clusters],
        {
            "parseval_residual": result.residual,
            "reciprocal_sum": result.reciprocal_sum,
            "dimension_gap": result.dimension_gap,
        },
    )


def closure_block(verdict: RootFrameVerdict, group: GroupEnumeration | None = None) -> dict:
    c = verdict.closure
    return {
        "status": c.status,
        "verdict": verdict.verdict,
        "orbit_size": c.orbit_size,
        "iterations": c.iterations,
        "growth_trace": list(c.growth_trace),
        "group_order": group.order if group is not None else c.group_order,
    }


def closure_report(F: Frame, verdict: RootFrameVerdict, group: GroupEnumeration | None = None) -> dict:
    verdicts: dict[str, bool | None] = {
        "closed": verdict.closure.closed,
        "spans": None if not verdict.closure.closed else verdict.verdict == "yes",
        "is_root_frame_closure": True if verdict.verdict == "yes" else (None if verdict.verdict == "unknown_cap" else False),
    }
    failures = []
    if verdict.verdict == "yes":
        missing = [k for k in range(len(F)) if k not in verdict.contained]
        failures = [
            {"check": "outside_positive_system", "index": k, "vector": _vec(F.vectors[k])} for k in missing
        ]
    if group is not None:
        verdicts["group_preserves_roots"] = group.preserves_roots
    return build_report(F, verdicts, None, None, failures, closure_block(verdict, group))


def verification_report(F: Frame, check: RootSystemCheck, symmetric: np.ndarray, spark: SparkObstruction) -> dict:
    failures: list[dict] = [
        {"check": "sign_symmetry", "index": i, "vector": _vec(symmetric[i])} for i in check.missing_negatives
    ]
    failures += [
        {
            "check": "reflection_closure",
            "alpha": v.alpha,
            "beta": v.beta,
            "alpha_vector": _vec(symmetric[v.alpha]),
            "beta_vector": _vec(symmetric[v.beta]),
            "reflected": _vec(v.reflected),
        }
        for v in check.violations
    ]
    failures += [
        {"check": "spark", "k": f.k, "l": f.l, "reflected": _vec(f.reflected)} for f in spark.failures
    ]
    return build_report(
        F,
        {"root_system": check.passed, "spark_obstruction_clear": spark.passed},
        None,
        {"closure_violations": float(len(check.violations)), "spark_failures": float(len(spark.failures))},
        failures,
    )


def verify_frame(F: Frame, tol: Tolerances = DEFAULT_TOL):
    """Root-system axiom on F together with its negatives, plus the spark obstruction."""
    symmetric = sign_symmetrize(F.vectors, tol.match)
    check = verify_root_system(symmetric, tol.match)
    if len(F) < 2:
        raise InvalidInputError("verify needs at least two vectors")
    spark = spark_obstruction(F, tol.match)
    return check, symmetric, spark
