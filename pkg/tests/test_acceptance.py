"""Acceptance criteria 1-12, one test per criterion.

Every test checks all of its cases, records a single ``[PASS]``/``[FAIL]``
line (printed and repeated in the terminal summary) and then asserts.
Where a quantity is derived rather than quoted, it is recomputed here with
plain loops or the brute-force helpers from conftest, independent of the
package code under test.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import (
    ACCEPTANCE_LINES,
    CLASSICAL,
    DEGENERATE,
    brute_frame_operator,
    brute_reflect,
    e1_plus_i23,
    non_eigenframe,
    positives,
    union_b2_i23,
)
from rootframes import (
    Frame,
    commutation_check,
    construct_classical,
    direct_sum,
    eigenframe_decomposition,
    gram_analysis,
    group_enumerate,
    multiplicity_bound_check,
    parseval_scaling,
    positive_subsystem,
    reflection_closure,
    root_frame_invariants,
    spark_obstruction,
    spectral_analysis,
)
from rootframes.rng import SplitMix64


def record(n: int, title: str, failures: list[str], detail: str) -> None:
    ok = not failures
    line = f"[{'PASS' if ok else 'FAIL'}] AC{n:<2} {title}: {detail}"
    if failures:
        line += " | " + "; ".join(failures[:5])
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def root_frame_fixtures() -> list[tuple[str, Frame]]:
    out = [(f"{f}{n}", positives(f, n)) for f, n in CLASSICAL]
    out.append(("B2+I2(3)", union_b2_i23()))
    return out


def positive_system(family: str, n: int, seed: int = 0):
    return positive_subsystem(construct_classical(family, n, normalize=True), seed=seed)


def union_positive_system(seed: int = 0):
    R = direct_sum(construct_classical("B", 2, normalize=True), construct_classical("I2", 3))
    return positive_subsystem(R, seed=seed)


def brute_lambda(vectors, k: int) -> float:
    """sum_beta <alpha_k, beta>^2 with explicit loops."""
    a = vectors[k]
    return sum(sum(x * y for x, y in zip(a, b)) ** 2 for b in vectors)


def brute_residual(S, v, lam) -> float:
    d = len(v)
    return math.sqrt(sum((sum(S[i][j] * v[j] for j in range(d)) - lam * v[i]) ** 2 for i in range(d)))


# -- 1 ---------------------------------------------------------------------


def test_ac1_bd_tight():
    failures, seen = [], []
    for d in range(2, 7):
        F = positives("B", d)
        rep = spectral_analysis(F)
        A, B = rep.optimal_bounds
        ev = np.linalg.eigvalsh(brute_frame_operator(F.vectors))
        if len(F) != d * d:
            failures.append(f"B{d}: {len(F)} positives")
        if abs(A - d) > 1e-9 or abs(B - d) > 1e-9:
            failures.append(f"B{d}: bounds ({A!r}, {B!r})")
        if abs(ev[0] - d) > 1e-9 or abs(ev[-1] - d) > 1e-9:
            failures.append(f"B{d}: oracle spectrum {ev}")
        if not rep.is_tight:
            failures.append(f"B{d}: not tight")
        seen.append(max(abs(A - d), abs(B - d)))
    record(1, "B_d tight with A = B = d", failures, f"d=2..6, max |bound - d| = {max(seen):.1e}")


# -- 2 ---------------------------------------------------------------------


def test_ac2_dihedral_tight():
    failures, seen = [], []
    for n in range(2, 13):
        F = positives("I2", n)
        A, B = spectral_analysis(F).optimal_bounds
        ev = np.linalg.eigvalsh(brute_frame_operator(F.vectors))
        err = max(abs(A - n / 2), abs(B - n / 2), abs(ev[0] - n / 2), abs(ev[-1] - n / 2))
        if err > 1e-9:
            failures.append(f"I2({n}): bounds ({A!r}, {B!r})")
        seen.append(err)
    record(2, "I2(n) tight with A = B = n/2", failures, f"n=2..12, max error = {max(seen):.1e}")


# -- 3 ---------------------------------------------------------------------


def test_ac3_a_degenerate():
    failures, seen = [], []
    for d in range(3, 7):
        F = positives("A", d - 1)
        rep = spectral_analysis(F)
        smallest = float(rep.eigenvalues.min())
        oracle_min = float(np.linalg.eigvalsh(brute_frame_operator(F.vectors))[0])
        if smallest > 1e-10 or oracle_min > 1e-10:
            failures.append(f"A{d - 1}: smallest eigenvalue {smallest!r}")
        if rep.is_frame:
            failures.append(f"A{d - 1}: reported as a frame")
        nonzero = [c for c in rep.eigen_clusters if c.value > 1e-6]
        if len(nonzero) != 1 or abs(nonzero[0].value - d / 2) > 1e-9 or nonzero[0].multiplicity != d - 1:
            failures.append(f"A{d - 1}: nonzero clusters {[(c.value, c.multiplicity) for c in nonzero]}")
        seen.append(abs(smallest))
    record(3, "A_(d-1) singular, d/2 of multiplicity d-1", failures, f"d=3..6, max |lambda_min| = {max(seen):.1e}")


# -- 4 ---------------------------------------------------------------------


def test_ac4_eigenvector_theorem():
    failures, worst = [], 0.0
    for f, n in CLASSICAL + DEGENERATE:
        F = positives(f, n)
        phi = F.vectors.tolist()
        S = brute_frame_operator(phi).tolist()
        res = max(brute_residual(S, phi[k], brute_lambda(phi, k)) for k in range(len(phi)))
        # and the package's own per-vector assignment agrees with the explicit sum
        rep = spectral_analysis(F)
        gap = max(abs(a.eigenvalue - brute_lambda(phi, a.index)) for a in rep.per_vector)
        if res > 1e-9:
            failures.append(f"{f}{n}: residual {res:.2e}")
        if gap > 1e-9:
            failures.append(f"{f}{n}: assigned eigenvalue off by {gap:.2e}")
        worst = max(worst, res)
    record(
        4,
        "S alpha = lambda_alpha alpha, lambda_alpha = sum <alpha,beta>^2",
        failures,
        f"{len(CLASSICAL) + len(DEGENERATE)} systems, max residual = {worst:.1e}",
    )


# -- 5 ---------------------------------------------------------------------


def _oracle_clusters(vectors):
    """(eigenvalue, multiplicity, count) from brute S and explicit lambda sums."""
    phi = np.asarray(vectors)
    ev = np.linalg.eigvalsh(brute_frame_operator(phi))
    lams = [brute_lambda(phi.tolist(), k) for k in range(len(phi))]
    out = []
    for lam in sorted({round(x, 8) for x in lams}):
        mult = int(np.sum(np.abs(ev - lam) <= 1e-7))
        count = sum(1 for x in lams if abs(x - lam) <= 1e-7)
        out.append((lam, mult, count))
    return out


def test_ac5_counting_identity():
    failures, worst = [], 0.0
    cases = [(f"{f}{n}", positive_system(f, n)) for f, n in CLASSICAL + DEGENERATE]
    cases.append(("B2+I2(3)", union_positive_system()))
    for name, P in cases:
        inv = root_frame_invariants(P)
        for c in inv.clusters:
            err = abs(c.eigenvalue * c.multiplicity - len(c.members))
            worst = max(worst, err, c.count_error)
            if err > 1e-6 or c.count_error > 1e-6:
                failures.append(f"{name}: lambda={c.eigenvalue:.6g} d={c.multiplicity} #={len(c.members)}")
        for lam, mult, count in _oracle_clusters(P.positives):
            if abs(lam * mult - count) > 1e-6:
                failures.append(f"{name}: oracle lambda={lam} d={mult} #={count}")

    inv = root_frame_invariants(union_positive_system())
    got = sorted((round(c.eigenvalue, 9), c.multiplicity, len(c.members)) for c in inv.clusters)
    if got != [(1.5, 2, 3), (2.0, 2, 4)]:
        failures.append(f"B2+I2(3) clusters {got}")
    if _oracle_clusters(union_positive_system().positives) != [(1.5, 2, 3), (2.0, 2, 4)]:
        failures.append("B2+I2(3) oracle clusters differ")
    record(
        5,
        "lambda_i * d_i = #R_(i,+)",
        failures,
        f"{len(cases)} systems incl. B2+I2(3) -> (2,2,4),(1.5,2,3); max error = {worst:.1e}",
    )


# -- 6 ---------------------------------------------------------------------


def test_ac6_parseval():
    failures, worst_res, worst_gap = [], 0.0, 0.0
    for name, F in root_frame_fixtures():
        sc = parseval_scaling(F)
        S = brute_frame_operator(sc.frame.vectors, sc.frame.weights)
        res = float(np.max(np.abs(S - np.eye(F.dim))))
        phi = F.vectors.tolist()
        gap = abs(sum(1.0 / brute_lambda(phi, k) for k in range(len(phi))) - F.dim)
        if res > 1e-9 or sc.residual > 1e-9:
            failures.append(f"{name}: residual {max(res, sc.residual):.2e}")
        if gap > 1e-8 or sc.dimension_gap > 1e-8:
            failures.append(f"{name}: |sum 1/lambda - d| = {max(gap, sc.dimension_gap):.2e}")
        worst_res, worst_gap = max(worst_res, res, sc.residual), max(worst_gap, gap, sc.dimension_gap)
    record(
        6,
        "Parseval rescaling and sum 1/lambda = d",
        failures,
        f"max residual = {worst_res:.1e}, max gap = {worst_gap:.1e}",
    )


# -- 7 ---------------------------------------------------------------------


def test_ac7_beta_independence():
    failures, worst = [], 0.0
    makers = [(f"{f}{n}", (lambda s, f=f, n=n: positive_system(f, n, s))) for f, n in CLASSICAL + DEGENERATE]
    makers.append(("B2+I2(3)", union_positive_system))
    for name, make in makers:
        ref = None
        halves = set()
        for seed in range(20):
            P = make(seed)
            halves.add(P.indices)
            S = brute_frame_operator(P.positives)
            if ref is None:
                ref = S
                continue
            diff = float(np.max(np.abs(S - ref)))
            worst = max(worst, diff)
            if diff > 1e-12:
                failures.append(f"{name} seed {seed}: differs by {diff:.2e}")
        if len(halves) < 2:
            # the test is vacuous if every seed picked the same half
            failures.append(f"{name}: all 20 seeds chose the same positive system")
    record(7, "frame operator independent of beta", failures, f"20 seeds x {len(makers)} systems, max diff = {worst:.1e}")


# -- 8 ---------------------------------------------------------------------


def test_ac8_closure():
    failures = []
    s = 1 / math.sqrt(2)
    res = reflection_closure(Frame([[1.0, 0.0], [0.0, 1.0], [s, s]]))
    if not res.closed or res.orbit_size != 8 or res.iterations > 4:
        failures.append(f"B2 seed: status={res.status} size={res.orbit_size} sweeps={res.iterations}")
    else:
        # the orbit with its negatives is B2 itself
        B2 = construct_classical("B", 2, normalize=True).roots
        for v in res.root_vectors():
            if not any(np.max(np.abs(v - r)) <= 1e-9 for r in B2):
                failures.append(f"orbit vector {v} not in B2")

    cap = reflection_closure(Frame([[1.0, 0.0], [math.cos(1.0), math.sin(1.0)]]))
    t = cap.growth_trace
    if cap.status != "cap_exceeded":
        failures.append(f"irrational angle: status {cap.status}")
    if any(b <= a for a, b in zip(t, t[1:])):
        failures.append(f"growth trace not strictly increasing: {t}")
    record(
        8,
        "closure recovers B2; irrational angle hits the cap",
        failures,
        f"B2 size {res.orbit_size} in {res.iterations} sweeps; cap trace {t}",
    )


# -- 9 ---------------------------------------------------------------------


def test_ac9_group_orders():
    failures = []
    cases = [("B", 2, 2**2 * 2), ("B", 3, 2**3 * 6), ("A", 2, math.factorial(3))]
    cases += [("I2", n, 2 * n) for n in range(3, 9)]
    got = []
    for f, n, expected in cases:
        g = group_enumerate(construct_classical(f, n, normalize=True))
        got.append(g.order)
        if g.status != "complete" or g.order != expected or not g.preserves_roots:
            failures.append(f"{f}{n}: {g.status} order {g.order}, expected {expected}")
    record(9, "reflection group orders", failures, "B2, B3, A2, I2(3..8) -> " + ",".join(map(str, got)))


# -- 10 --------------------------------------------------------------------


def _brute_spark_failures(vectors, eps=1e-9) -> int:
    vs = [list(map(float, v)) for v in vectors]
    bad = 0
    for k, a in enumerate(vs):
        for l, b in enumerate(vs):
            if l == k or abs(sum(x * y for x, y in zip(a, b))) <= eps:
                continue
            r = brute_reflect(a, b)
            hit = any(
                all(abs(x - y) <= eps for x, y in zip(r, w)) or all(abs(x + y) <= eps for x, y in zip(r, w))
                for w in vs
            )
            bad += not hit
    return bad


def generic_frame(seed: int = 7) -> Frame:
    rng = SplitMix64(seed)
    return Frame([rng.unit_vector(3) for _ in range(4)])


def test_ac10_spark():
    failures = []
    for name, F in root_frame_fixtures():
        sp = spark_obstruction(F)
        if not sp.passed:
            failures.append(f"{name}: {len(sp.failures)} failures")
        if _brute_spark_failures(F.vectors) != 0:
            failures.append(f"{name}: oracle found failures")
    G = generic_frame()
    sp = spark_obstruction(G)
    oracle = _brute_spark_failures(G.vectors)
    if sp.passed or oracle == 0 or len(sp.failures) != oracle:
        failures.append(f"generic: {len(sp.failures)} witnesses, oracle {oracle}")
    record(
        10,
        "spark obstruction",
        failures,
        f"{len(root_frame_fixtures())} root frames clean; generic 4 in R^3 has {len(sp.failures)} witnesses",
    )


# -- 11 --------------------------------------------------------------------


def _random_orthogonal(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    return q * np.sign(np.diag(r))


def random_eigenframe(rng) -> Frame:
    """Block-tight frame in a random orthonormal basis: an eigenframe by construction."""
    while True:
        d = int(rng.integers(2, 7))
        Q = _random_orthogonal(rng, d)
        cuts = np.sort(rng.choice(np.arange(1, d), size=int(rng.integers(0, d)), replace=False))
        rows = []
        for block in np.split(np.arange(d), cuts):
            basis = Q[:, block]
            m = len(block)
            c = rng.uniform(0.3, 2.0)
            if m == 2 and rng.random() < 0.5:
                # k >= 3 equally spaced unit vectors in the plane
                k = int(rng.integers(3, 6))
                t0 = rng.uniform(0, math.pi)
                coords = [[math.cos(t0 + j * math.pi / k), math.sin(t0 + j * math.pi / k)] for j in range(k)]
            else:
                coords = list(_random_orthogonal(rng, m) * np.ones((m, m)))
                if rng.random() < 0.3:
                    coords += list(_random_orthogonal(rng, m))
            rows += [c * (basis @ np.asarray(x)) for x in coords]
        if 3 <= len(rows) <= 12:
            order = rng.permutation(len(rows))
            return Frame(np.asarray(rows)[order])


def random_generic(rng) -> Frame:
    d = int(rng.integers(2, 7))
    n = int(rng.integers(max(3, d), 13))
    return Frame(rng.normal(size=(n, d)))


def _brute_cluster_checks(F: Frame, comps) -> float:
    """Worst of: projector identity per component and cross-component Gram entries."""
    phi, w = F.vectors, F.weights
    worst = 0.0
    for comp in comps:
        P = comp.basis @ comp.basis.T
        part = brute_frame_operator(phi[list(comp.members)], w[list(comp.members)])
        worst = max(worst, float(np.max(np.abs(part - comp.eigenvalue * P))))
    label = {}
    for i, comp in enumerate(comps):
        for k in comp.members:
            label[k] = i
    for k in range(len(F)):
        for l in range(len(F)):
            if label[k] != label[l]:
                worst = max(worst, abs(float(sum(a * b for a, b in zip(phi[k], phi[l])))))
    return worst


def test_ac11_eigenframe_equivalences():
    rng = np.random.default_rng(20240611)
    frames = [random_eigenframe(rng) if i % 2 else random_generic(rng) for i in range(500)]
    fixtures = [F for _, F in root_frame_fixtures()]
    fixtures += [positives(f, n) for f, n in DEGENERATE]
    fixtures += [e1_plus_i23(), non_eigenframe(), Frame([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])]

    failures, eigen, worst = [], 0, 0.0
    for i, F in enumerate(frames + fixtures):
        spectrum = spectral_analysis(F)
        comm = commutation_check(F)
        if comm.commutes != spectrum.is_eigenframe:
            failures.append(f"frame {i}: commutes={comm.commutes} is_eigenframe={spectrum.is_eigenframe}")
            continue
        if not spectrum.is_eigenframe:
            continue
        eigen += 1
        dec = eigenframe_decomposition(F)
        gram = gram_analysis(F)
        pkg = max(max(c.projector_residual for c in dec.components), gram.off_block_max)
        oracle = _brute_cluster_checks(F, dec.components)
        worst = max(worst, pkg, oracle)
        if pkg > 1e-8 or oracle > 1e-8 or not dec.verified or not gram.block_diagonal:
            failures.append(f"frame {i}: projector/Gram defect {max(pkg, oracle):.2e}")

    # every constructed eigenframe must be detected, or the agreement above is hollow
    missed = [i for i in range(1, 500, 2) if not spectral_analysis(frames[i]).is_eigenframe]
    if missed:
        failures.append(f"constructed eigenframes not detected: {missed[:5]}")
    record(
        11,
        "commutation <=> eigenframe; projector and Gram identities",
        failures,
        f"{len(frames)} random + {len(fixtures)} fixtures, {eigen} eigenframes, max defect = {worst:.1e}",
    )


# -- 12 --------------------------------------------------------------------


def test_ac12_multiplicity_bound():
    failures = []
    rep = multiplicity_bound_check(Frame([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    u = rep.vectors[0]
    if u.occurrences != [0, 1] or abs(u.eigenvalue - 2.0) > 1e-9 or u.bound != 2.0:
        failures.append(f"e1,e1,e2: lambda={u.eigenvalue} bound={u.bound}")
    if not (u.equality and u.orthogonal_to_rest and rep.passed):
        failures.append("e1,e1,e2: equality/orthogonality not reported")

    I24 = positives("I2", 4).vectors
    axis = [v for v in I24 if np.isclose(np.abs(v).max(), 1.0)]
    F = Frame(np.vstack([I24, axis]))
    rep2 = multiplicity_bound_check(F)
    dup = [v for v in rep2.vectors if len(v.occurrences) == 2]
    oracle = [brute_lambda(F.vectors.tolist(), v.index) for v in dup]
    if len(dup) != 2:
        failures.append(f"I2(4)+axes: {len(dup)} duplicated vectors")
    for v, lam in zip(dup, oracle):
        if not (v.holds and not v.equality and lam > v.bound + 1e-9):
            failures.append(f"I2(4)+axes: lambda={v.eigenvalue} bound={v.bound} not strict")
    record(
        12,
        "multiplicity bound lambda >= c ||u||^2",
        failures,
        f"e1,e1,e2 equality at 2; duplicated I2(4) strict {[round(v.eigenvalue, 9) for v in dup]} > "
        f"{[v.bound for v in dup]}",
    )


@pytest.mark.parametrize("seed", [0, 1])
def test_generic_fixture_is_stable(seed):
    # the AC10 fixture is deterministic across runs
    a, b = generic_frame(7 + seed), generic_frame(7 + seed)
    np.testing.assert_array_equal(a.vectors, b.vectors)
