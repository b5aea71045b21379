import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import as_tuples, chebyshev, euclid, grid_bf, hausdorff_bf, manhattan
from paretogauge.utility_model import (
    DimensionError,
    DomainError,
    FiniteUtilitySet,
    HalfspaceSet,
    Metric,
    SmnFamily,
    discretize,
    dominates,
    hausdorff,
    log_map,
    smn_halfspaces,
    strictly_dominated_by_all_coords,
)


@pytest.mark.parametrize(
    "u, v, expected",
    [((1, 1), (2, 2), True), ((1, 2), (2, 1), False), ((1, 1), (1, 1), True)],
)
def test_dominates(u, v, expected):
    assert dominates(u, v) is expected


@pytest.mark.parametrize(
    "u, v, expected",
    [((1, 1), (2, 2), True), ((1, 1), (1, 2), False), ((0, 0), (0.1, 0.1), True)],
)
def test_strictly_dominated_by_all_coords(u, v, expected):
    assert strictly_dominated_by_all_coords(u, v) is expected


def test_order_dimension_mismatch():
    with pytest.raises(DimensionError):
        dominates((1, 2), (1, 2, 3))
    with pytest.raises(DimensionError):
        strictly_dominated_by_all_coords((1,), (1, 2))


def test_negative_point_rejected():
    with pytest.raises(DomainError):
        FiniteUtilitySet([[1.0, -0.5]])


def test_hausdorff_examples():
    assert hausdorff([[1, 2]], [[1, 2]]) == 0
    assert hausdorff([[0, 0]], [[3, 4]], Metric.L_2) == 5
    A, B = [[0, 0], [1, 0]], [[0, 0]]
    assert hausdorff(A, B, Metric.L_INFINITY) == hausdorff_bf(A, B) == 1


def test_hausdorff_dimension_mismatch():
    with pytest.raises(DimensionError):
        hausdorff([[0, 0]], [[0, 0, 0]])


@pytest.mark.parametrize("metric, d", [(Metric.L_INFINITY, chebyshev), (Metric.L_2, euclid), (Metric.L_1, manhattan)])
def test_hausdorff_matches_brute_force(metric, d):
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        A = rng.uniform(0, 5, size=(int(rng.integers(1, 15)), n))
        B = rng.uniform(0, 5, size=(int(rng.integers(1, 15)), n))
        assert hausdorff(A, B, metric) == pytest.approx(hausdorff_bf(A.tolist(), B.tolist(), d), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_hausdorff_is_a_metric(data):
    n = data.draw(st.integers(1, 3))
    pts = st.lists(st.lists(st.floats(0, 10, allow_nan=False), min_size=n, max_size=n), min_size=1, max_size=20)
    A, B, C = data.draw(pts), data.draw(pts), data.draw(pts)
    assert hausdorff(A, A) == 0
    assert hausdorff(A, B) == hausdorff(B, A)
    assert hausdorff(A, C) <= hausdorff(A, B) + hausdorff(B, C) + 1e-12
    if hausdorff(A, B) == 0:
        assert FiniteUtilitySet(A).same_points(FiniteUtilitySet(B))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(*[st.lists(st.integers(0, 2), min_size=n, max_size=n)] * 3)))
def test_dominance_is_a_partial_order(triple):
    u, v, w = triple
    assert dominates(u, u)
    if dominates(u, v) and dominates(v, u):
        assert u == v
    if dominates(u, v) and dominates(v, w):
        assert dominates(u, w)
    if strictly_dominated_by_all_coords(u, v):
        assert dominates(u, v) and not dominates(v, u)


def test_discretize_examples():
    H = HalfspaceSet(2, (((1, 1), 1),))
    assert as_tuples(discretize(H, 2).points) == {(0, 0), (1, 0), (0, 1)}
    box = HalfspaceSet(2, (((1, 0), 1), ((0, 1), 1)))
    assert as_tuples(discretize(box, 2).points) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    S = discretize(smn_halfspaces(SmnFamily(2, 3)), 3)
    assert S.contains((2, 0, 0))


def test_discretize_matches_enumeration():
    cons = (((1.0, 2.0), 3.0), ((2.0, 0.5), 2.5))
    H = HalfspaceSet(2, cons)
    lo, hi = H.bounding_box
    for r in (2, 3, 7, 12):
        assert as_tuples(discretize(H, r).points) == grid_bf(lo.tolist(), hi.tolist(), r, cons)


def test_discretize_errors():
    with pytest.raises(DomainError):
        HalfspaceSet(2, (((1, -1), 1),))  # unbounded along y
    with pytest.raises(DomainError):
        HalfspaceSet(1, (((-1,), -2), ((1,), 1)))  # x >= 2 and x <= 1
    # thin diagonal slab: none of the four bounding-box corners is feasible
    H = HalfspaceSet(2, (((1, -1), 0.05), ((-1, 1), 0.05), ((-1, -1), -0.5), ((1, 1), 1.5)))
    with pytest.raises(DomainError):
        discretize(H, 2)


def test_discretize_inside_and_converges():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        cons = tuple((tuple(rng.uniform(0.1, 2, n)), float(rng.uniform(0.5, 3))) for _ in range(2))
        H = HalfspaceSet(n, cons)
        r = int(rng.integers(2, 10))
        pts = discretize(H, r).points
        assert np.all(pts @ H.A.T <= H.b + 1e-9)
        lo, hi = H.bounding_box
        assert hausdorff(pts, discretize(H, 2 * r).points) <= np.max((hi - lo) / (r - 1)) + 1e-9


def test_smn_halfspaces_slack():
    H = smn_halfspaces(SmnFamily(2, 3))
    assert H.slack((2, 0, 0))[0] == 0
    assert H.slack((2 / 3, 1 / 3, 1 / 3))[0] == pytest.approx(0, abs=1e-15)
    assert not H.contains((1, 1, 1))
    assert H.slack((1, 1, 1))[0] == pytest.approx(-1.5)


def test_smn_family_invariants():
    with pytest.raises(DomainError):
        SmnFamily(0, 3)
    with pytest.raises(DomainError):
        SmnFamily(2, 1)


def test_log_map():
    assert np.array_equal(log_map([[1, 1]]), [[0, 0]])
    assert np.allclose(log_map([[math.e, math.e**2]]), [[1, 2]])
    with pytest.raises(DomainError, match=r"\[1.0, 0.0\]"):
        log_map([[1, 0]])


def test_json_round_trips():
    U = FiniteUtilitySet([[1, 2], [3, 4]])
    assert FiniteUtilitySet.from_json(json.loads(json.dumps(U.to_json()))).same_points(U)
    H = smn_halfspaces(SmnFamily(3, 4))
    assert HalfspaceSet.from_json(json.loads(json.dumps(H.to_json()))) == H
    F = SmnFamily(2.5, 3)
    assert SmnFamily.from_json(json.loads(json.dumps(F.to_json()))) == F
