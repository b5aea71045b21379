"""Pareto fronts of finite sets, set expansions and epsilon-approximations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .utility_model import (
    TOL,
    DimensionError,
    DomainError,
    FiniteUtilitySet,
    Metric,
    as_point,
    as_set,
    log_map,
)

_CHUNK = 512


@dataclass(frozen=True)
class ParetoFront:
    points: FiniteUtilitySet
    source_size: int

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {"front": self.points.points.tolist(), "source_size": self.source_size}

    @classmethod
    def from_json(cls, obj: dict) -> "ParetoFront":
        return cls(FiniteUtilitySet(obj["front"]), int(obj["source_size"]))


def _dominated_mask(cand: np.ndarray, by: np.ndarray) -> np.ndarray:
    """For each row of ``cand``: is some row of ``by`` >= it and different?"""
    if by.shape[0] == 0:
        return np.zeros(cand.shape[0], dtype=bool)
    ge = np.all(by[None, :, :] >= cand[:, None, :], axis=2)
    gt = np.any(by[None, :, :] > cand[:, None, :], axis=2)
    return np.any(ge & gt, axis=1)


def front_array(points) -> np.ndarray:
    """Maximal rows of an ``(m, n)`` array, duplicates collapsed.

    Rows are scanned in decreasing order of (sum, lexicographic value), so
    any dominator of a row is scanned before it; each chunk is checked
    against the front accumulated so far and against itself.
    """
    P = np.unique(np.atleast_2d(np.asarray(points, dtype=float)), axis=0)
    keys = [P[:, k] for k in reversed(range(P.shape[1]))] + [P.sum(axis=1)]
    order = np.lexsort(keys)[::-1]
    P = P[order]
    front = np.empty((0, P.shape[1]))
    for start in range(0, P.shape[0], _CHUNK):
        chunk = P[start:start + _CHUNK]
        chunk = chunk[~_dominated_mask(chunk, front)]
        if chunk.shape[0]:
            chunk = chunk[~_dominated_mask(chunk, chunk)]
            front = np.vstack([front, chunk])
    return front


def pareto_filter(U) -> ParetoFront:
    """The maximal elements of ``U`` for the componentwise order."""
    U = as_set(U)
    return ParetoFront(FiniteUtilitySet(front_array(U.points)), len(U))


def is_pareto_optimal(u, U) -> bool:
    """Whether ``u`` (a member of ``U``) is maximal in ``U``."""
    U = as_set(U)
    u = as_point(u)
    if not U.contains(u):
        raise DomainError(f"point {u.tolist()} is not in the utility set")
    P = U.points
    return not bool(np.any(np.all(P >= u, axis=1) & np.any(P > u, axis=1)))


def is_strictly_dominated(u, U) -> bool:
    """Whether some point of ``U`` beats ``u`` in every coordinate."""
    U = as_set(U)
    u = as_point(u)
    if u.shape[0] != U.dim:
        raise DimensionError(f"dimension mismatch: {u.size} vs {U.dim}")
    return bool(np.any(np.all(U.points > u, axis=1)))


@dataclass(frozen=True)
class Expansion:
    """``base (+) radius`` (additive) or ``base (x) factor`` (multiplicative).

    The multiplicative form is the additive one taken in log space:
    ``p`` belongs iff ``d(log x, log p) <= log(factor)`` for some ``x``.
    """

    base: FiniteUtilitySet
    factor: Optional[float] = None
    radius: Optional[float] = None
    metric: Metric = Metric.L_INFINITY

    def __post_init__(self):
        if (self.factor is None) == (self.radius is None):
            raise ValueError("set exactly one of factor (multiplicative) or radius (additive)")
        if self.factor is not None and not self.factor >= 1:
            raise ValueError(f"factor must be >= 1, got {self.factor}")
        if self.radius is not None and not self.radius >= 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        object.__setattr__(self, "base", as_set(self.base))
        object.__setattr__(self, "metric", Metric(self.metric))

    @property
    def multiplicative(self) -> bool:
        return self.factor is not None


def expand_contains(E: Expansion, p, tol: float = TOL) -> bool:
    """Membership of ``p`` in the expansion ``E``."""
    p = as_point(p)
    if p.shape[0] != E.base.dim:
        raise DimensionError(f"dimension mismatch: {p.size} vs {E.base.dim}")
    if E.multiplicative:
        base = log_map(E.base)
        q = log_map(p[None, :])[0]
        reach = math.log(E.factor)
    else:
        base, q, reach = E.base.points, p, E.radius
    dist, _ = cKDTree(base).query(q, p=E.metric.minkowski_p)
    return bool(dist <= reach + tol)


def _check_subset(S: FiniteUtilitySet, U: FiniteUtilitySet) -> None:
    if S.dim != U.dim:
        raise DimensionError(f"dimension mismatch: {S.dim} vs {U.dim}")
    if not S.issubset(U):
        raise DomainError("approximating set is not a subset of the utility set")


def verify_eps_approx(S, U, eps: float, tol: float = TOL) -> tuple[bool, Optional[np.ndarray]]:
    """Check that every ``u`` in ``U`` has ``s`` in ``S`` with ``u <= (1 + eps) s``.

    Returns ``(True, None)`` or ``(False, u)`` for the first uncovered ``u``.
    """
    S, U = as_set(S), as_set(U)
    if eps < 0:
        raise ValueError("eps must be >= 0")
    _check_subset(S, U)
    scaled = (1.0 + eps) * S.points
    for start in range(0, len(U), _CHUNK):
        chunk = U.points[start:start + _CHUNK]
        covered = np.any(np.all(chunk[:, None, :] <= scaled[None, :, :] + tol, axis=2), axis=1)
        if not covered.all():
            return False, chunk[np.argmin(covered)].copy()
    return True, None


def eps_approx_construct(U, eps: float) -> FiniteUtilitySet:
    """An ``eps``-approximation of the Pareto front of ``U``.

    Front points are bucketed into log-space cells of side ``log(1 + eps)``
    and the largest-sum point of each occupied cell is kept.  ``eps == 0``
    returns the whole front.
    """
    U = as_set(U)
    if eps < 0:
        raise ValueError("eps must be >= 0")
    if np.any(U.points <= 0):
        raise DomainError("eps-approximation needs strictly positive coordinates")
    front = front_array(U.points)
    if eps == 0:
        return FiniteUtilitySet(front)
    cells = np.floor(np.log(front) / math.log1p(eps)).astype(np.int64)
    # front_array returns rows in decreasing-sum order: first hit per cell wins
    _, first = np.unique(cells, axis=0, return_index=True)
    return FiniteUtilitySet(front[np.sort(first)])


def check_eps_expansion_theorem(S, U, eps: float) -> tuple[bool, bool]:
    """Evaluate both sides of the epsilon-approximation / expansion equivalence.

    Returns ``(definitional, expansion_form)``: the ``(1 + eps)`` covering of
    ``U`` by ``S``, and the inclusion of the front of ``U`` in
    ``S (x) exp(eps)``.  The two agree to first order in ``eps`` only.
    """
    S, U = as_set(S), as_set(U)
    _check_subset(S, U)
    if np.any(U.points <= 0):
        raise DomainError("needs strictly positive coordinates")
    definitional, _ = verify_eps_approx(S, U, eps)
    E = Expansion(S, factor=math.exp(eps))
    front = front_array(U.points)
    expansion = all(expand_contains(E, f) for f in front)
    return definitional, expansion


__all__ = [
    "ParetoFront",
    "Expansion",
    "front_array",
    "pareto_filter",
    "is_pareto_optimal",
    "is_strictly_dominated",
    "expand_contains",
    "verify_eps_approx",
    "eps_approx_construct",
    "check_eps_expansion_theorem",
]
