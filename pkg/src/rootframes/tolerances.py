"""Numerical tolerances used throughout the package.

All checks read their thresholds from a :class:`Tolerances` instance so that
a single multiplier (the CLI ``--tol`` flag) can loosen or tighten them all.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    # absolute per-coordinate tolerance for vector equality
    match: float = 1e-9
    # is_frame: smallest eigenvalue > frame * largest
    frame: float = 1e-9
    # is_tight: (B - A) / B <= tight
    tight: float = 1e-9
    # is_eigenframe: every ||S phi - lambda phi|| / ||phi|| <= eigen_residual
    eigen_residual: float = 1e-8
    # eigenvalue clustering: new cluster when the gap exceeds
    # max(cluster_gap * B, cluster_floor)
    cluster_gap: float = 1e-6
    cluster_floor: float = 1e-12
    # commutators compared against commutation * B
    commutation: float = 1e-9
    # projector identities, Gram off-blocks, cross-component inner products
    projector: float = 1e-8
    # parameter functions: relative spread allowed inside an orbit
    parameter: float = 1e-9
    # dedup grid for orbit and group enumeration keys
    grid: float = 1e-8

    def scaled(self, factor: float) -> "Tolerances":
        """Return a copy with every tolerance multiplied by ``factor``."""
        if not factor > 0:
            raise ValueError(f"tolerance factor must be positive, got {factor!r}")
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


DEFAULT_TOL = Tolerances()
