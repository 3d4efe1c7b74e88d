import math
import warnings

import numpy as np
import pytest

from conftest import SQRT2, brute_violations
from rootframes import (
    Frame,
    InvalidInputError,
    RootSystem,
    construct_classical,
    group_enumerate,
    is_root_frame_closure,
    positive_subsystem,
    reflection_closure,
    spark_obstruction,
    verify_root_system,
)
from rootframes.geometry import match_rows_signed

s = 1 / SQRT2
IRRATIONAL = Frame([[1.0, 0.0], [math.cos(1), math.sin(1)]])


def hand_bfs_b2():
    """Closure of {e1, e2, (e1+e2)/sqrt2} by plain list operations."""
    found = [[1.0, 0.0], [0.0, 1.0], [s, s]]
    changed = True
    while changed:
        changed = False
        for a in list(found):
            for b in list(found):
                c = 2 * (a[0] * b[0] + a[1] * b[1])
                img = [b[0] - c * a[0], b[1] - c * a[1]]
                if not any(
                    max(abs(img[0] - sg * f[0]), abs(img[1] - sg * f[1])) <= 1e-9 for f in found for sg in (1, -1)
                ):
                    found.append(img)
                    changed = True
    return found


def test_closure_b2():
    res = reflection_closure(Frame([[1.0, 0.0], [0.0, 1.0], [s, s]]))
    assert len(hand_bfs_b2()) == 4
    assert res.status == "closed" and res.orbit_size == 8
    assert res.growth_trace == [6, 8, 8]
    assert res.iterations <= 4
    assert verify_root_system(res.root_vectors()).passed


def test_closure_orthogonal_pair():
    res = reflection_closure(Frame(np.eye(2)))
    assert res.status == "closed" and res.orbit_size == 4 and res.growth_trace == [4, 4]


def test_closure_irrational_angle_caps():
    res = reflection_closure(IRRATIONAL)
    assert res.status == "cap_exceeded" and res.orbit is None
    assert res.orbit_size > 10000
    assert all(b > a for a, b in zip(res.growth_trace, res.growth_trace[1:]))


def test_closure_sweep_cap():
    res = reflection_closure(IRRATIONAL, max_sweeps=3)
    assert res.status == "cap_exceeded" and res.iterations == 3 and len(res.growth_trace) == 4


def test_closure_rejects_non_unit():
    with pytest.raises(InvalidInputError):
        reflection_closure(Frame([[2.0, 0.0]]))


def test_closure_collapses_duplicates_with_warning():
    with pytest.warns(UserWarning):
        res = reflection_closure(Frame([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]))
    assert res.orbit_size == 4


def test_closure_deterministic():
    a = reflection_closure(IRRATIONAL, max_vectors=3000)
    b = reflection_closure(IRRATIONAL, max_vectors=3000)
    assert a.growth_trace == b.growth_trace and a.iterations == b.iterations


@pytest.mark.parametrize(
    "family,n",
    [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("D", 3), ("D", 4)]
    + [("I2", n) for n in range(2, 9)],
)
def test_closure_is_idempotent_on_root_systems(family, n):
    R = construct_classical(family, n, normalize=True)
    res = reflection_closure(Frame(positive_subsystem(R, seed=1).positives))
    assert res.status == "closed"
    assert res.orbit_size == len(R)
    assert np.all(match_rows_signed(R.roots, res.orbit, 1e-9) >= 0)
    assert brute_violations(res.root_vectors()) == []


def test_closure_generates_b3_from_simple_roots():
    # simple roots e1-e2, e2-e3, e3 generate all of B3
    simple = Frame([[s, -s, 0.0], [0.0, s, -s], [0.0, 0.0, 1.0]])
    res = reflection_closure(simple)
    assert res.orbit_size == 18


def test_root_frame_closure_yes():
    F = Frame([[1.0, 0.0], [0.0, 1.0], [s, s]])
    v = is_root_frame_closure(F)
    assert v.verdict == "yes"
    assert len(v.root_system) == 8
    assert sorted(v.contained) == [0, 1, 2]
    assert np.all(match_rows_signed(F.vectors, v.positive_system.positives, 1e-9) >= 0)
    assert spark_obstruction(Frame(v.positive_system.positives)).passed


def test_root_frame_closure_no_span():
    v = is_root_frame_closure(Frame([[1.0, 0.0]]))
    assert v.verdict == "no_span"
    assert len(v.root_system) == 2


def test_root_frame_closure_unknown():
    v = is_root_frame_closure(IRRATIONAL)
    assert v.verdict == "unknown_cap" and v.root_system is None


def test_root_frame_closure_random_subsets_pass_spark():
    rng = np.random.default_rng(9)
    for fam, n in [("B", 3), ("D", 4), ("I2", 6), ("A", 3)]:
        R = construct_classical(fam, n, normalize=True)
        pick = R.roots[rng.choice(len(R), size=4, replace=False)]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            v = is_root_frame_closure(Frame(pick))
        if v.verdict == "yes":
            assert spark_obstruction(Frame(v.positive_system.positives)).passed


@pytest.mark.parametrize(
    "family,n,order",
    [("B", 2, 8), ("B", 3, 48), ("A", 2, 6), ("A", 3, 24)] + [("I2", n, 2 * n) for n in range(3, 9)],
)
def test_group_orders(family, n, order):
    g = group_enumerate(construct_classical(family, n, normalize=True))
    assert g.status == "complete" and g.order == order
    assert g.preserves_roots


def test_group_order_closed_forms():
    for d in (2, 3):
        assert group_enumerate(construct_classical("B", d)).order == 2**d * math.factorial(d)


def test_group_cap():
    g = group_enumerate(construct_classical("B", 3), max_elements=10)
    assert g.status == "cap_exceeded" and g.order is None


def test_group_of_custom_system():
    R = RootSystem([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    assert group_enumerate(R).order == 4
