import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import as_tuples, front_bf, weakly_below
from paretogauge.indexes import ARITHMETIC, GEOMETRIC
from paretogauge.pareto import (
    Expansion,
    ParetoFront,
    check_eps_expansion_theorem,
    eps_approx_construct,
    expand_contains,
    is_pareto_optimal,
    is_strictly_dominated,
    pareto_filter,
    verify_eps_approx,
)
from paretogauge.policies import apply_policy, index_opt
from paretogauge.utility_model import DomainError, FiniteUtilitySet, Metric, SmnFamily, discretize, smn_halfspaces


@pytest.mark.parametrize(
    "U, expected",
    [
        ([[1, 2], [2, 1], [1, 1]], {(1, 2), (2, 1)}),
        ([[1, 1]], {(1, 1)}),
        ([[1, 1], [2, 2], [3, 3]], {(3, 3)}),
        ([[1, 1], [1, 1], [0, 2]], {(1, 1), (0, 2)}),
    ],
)
def test_pareto_filter_examples(U, expected):
    front = pareto_filter(U)
    assert as_tuples(front.points.points) == expected
    assert front.source_size == len(U)


def sets(n_max=3, m_max=30, integers=False):
    coord = st.integers(0, 4).map(float) if integers else st.floats(0, 10, allow_nan=False)
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(coord, min_size=n, max_size=n), min_size=1, max_size=m_max)
    )


@settings(max_examples=200, deadline=None)
@given(st.one_of(sets(), sets(integers=True)))
def test_pareto_filter_matches_brute_force(U):
    front = pareto_filter(U).points
    assert as_tuples(front.points) == {tuple(round(x, 12) for x in u) for u in front_bf(U)}
    # idempotent, and every point is covered
    assert pareto_filter(front).points.same_points(front)
    for u in U:
        assert any(weakly_below(u, f) for f in front.points)


def test_pareto_filter_large_grid_matches_chunkless_oracle():
    U = discretize(smn_halfspaces(SmnFamily(2, 3)), 25)
    front = pareto_filter(U).points.points
    P = U.points
    ge = np.all(P[None, :, :] >= P[:, None, :], axis=2) & np.any(P[None, :, :] > P[:, None, :], axis=2)
    expected = P[~ge.any(axis=1)]
    assert as_tuples(front) == as_tuples(expected)


def test_front_of_chain_is_its_maximum():
    chain = np.outer(np.linspace(0.5, 4, 9), [1, 2, 3])
    assert as_tuples(pareto_filter(chain).points.points) == {(4.0, 8.0, 12.0)}


@pytest.mark.parametrize(
    "u, U, expected",
    [((1, 1), [[1, 1], [2, 2]], False), ((2, 2), [[1, 1], [2, 2]], True), ((1, 2), [[1, 2], [2, 1]], True)],
)
def test_is_pareto_optimal(u, U, expected):
    assert is_pareto_optimal(u, U) is expected


def test_is_pareto_optimal_needs_membership():
    with pytest.raises(DomainError):
        is_pareto_optimal((5, 5), [[1, 1]])


@pytest.mark.parametrize(
    "u, U, expected", [((1, 1), [[2, 2]], True), ((1, 2), [[2, 2]], False), ((0, 0), [[0, 0]], False)]
)
def test_is_strictly_dominated(u, U, expected):
    assert is_strictly_dominated(u, U) is expected


def test_expand_contains_examples():
    base = FiniteUtilitySet([[1, 1]])
    assert expand_contains(Expansion(base, radius=0.5), (1.5, 1.0))
    assert not expand_contains(Expansion(base, radius=0.5), (1.6, 1.0))
    assert expand_contains(Expansion(base, factor=2), (2, 2))
    assert not expand_contains(Expansion(base, factor=2), (4, 1))
    assert expand_contains(Expansion(base, radius=1.0, metric=Metric.L_1), (1.5, 1.5))
    assert not expand_contains(Expansion(base, radius=0.9, metric=Metric.L_1), (1.5, 1.5))


def test_expansion_validation():
    base = FiniteUtilitySet([[1, 1]])
    with pytest.raises(ValueError):
        Expansion(base)
    with pytest.raises(ValueError):
        Expansion(base, factor=2, radius=1)
    with pytest.raises(ValueError):
        Expansion(base, factor=0.5)
    with pytest.raises(DomainError):
        expand_contains(Expansion(base, factor=2), (0, 1))


def test_verify_eps_approx_examples():
    U = [[1, 2], [2, 1], [1, 1]]
    assert verify_eps_approx(pareto_filter(U).points, U, 0) == (True, None)
    assert verify_eps_approx([[1, 1]], [[1, 1], [1.05, 1.05]], 0.05)[0]
    ok, witness = verify_eps_approx([[1, 1]], [[1, 1], [1.2, 1.2]], 0.05)
    assert not ok and np.allclose(witness, (1.2, 1.2))


def test_verify_eps_approx_requires_subset():
    with pytest.raises(DomainError):
        verify_eps_approx([[3, 3]], [[1, 1]], 0.1)


def test_eps_approx_construct_examples():
    assert as_tuples(eps_approx_construct([[1, 1]], 0.1).points) == {(1.0, 1.0)}
    assert as_tuples(eps_approx_construct([[1, 1], [1.05, 1.05]], 0.1).points) == {(1.05, 1.05)}
    with pytest.raises(DomainError):
        eps_approx_construct([[1, 0]], 0.1)


def test_eps_approx_construct_random_200():
    rng = np.random.default_rng(5)
    U = FiniteUtilitySet(rng.uniform(0.1, 10, size=(200, 2)))
    S = eps_approx_construct(U, 0.25)
    assert len(S) <= len(pareto_filter(U))
    assert verify_eps_approx(S, U, 0.25)[0]


@settings(max_examples=100, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(st.floats(0.1, 100), min_size=n, max_size=n), min_size=1, max_size=200)
    ),
    st.sampled_from([0.0, 0.01, 0.1, 0.25, 1.0, 3.0]),
)
def test_eps_construction_always_verifies(U, eps):
    S = eps_approx_construct(U, eps)
    assert verify_eps_approx(S, U, eps)[0]
    assert verify_eps_approx(S, U, eps * 2 + 0.1)[0]  # monotone in eps


def test_eps_zero_returns_front():
    rng = np.random.default_rng(2)
    U = rng.uniform(0.1, 10, size=(100, 3))
    assert eps_approx_construct(U, 0).same_points(pareto_filter(U).points)


def test_check_eps_expansion_theorem():
    U = [[1, 1], [2, 3], [3, 2]]
    assert check_eps_expansion_theorem(pareto_filter(U).points, U, 0.3) == (True, True)
    d = 0.01
    far = math.e - d
    assert check_eps_expansion_theorem([[1, 1]], [[1, 1], [far, far]], 1.0) == (False, True)
    assert check_eps_expansion_theorem([[1, 1]], [[1, 1], [1.5, 1.5]], 1.0) == (True, True)


@settings(max_examples=150, deadline=None)
@given(sets(m_max=25))
def test_strict_index_argmax_on_front(U):
    front = pareto_filter(U).points
    assert front.contains(apply_policy(index_opt(ARITHMETIC), U))
    if np.all(np.asarray(U) > 0):
        assert front.contains(apply_policy(index_opt(GEOMETRIC), U))


def test_pareto_front_json():
    front = pareto_filter([[1, 2], [2, 1]])
    back = ParetoFront.from_json(front.to_json())
    assert back.points.same_points(front.points) and back.source_size == 2
