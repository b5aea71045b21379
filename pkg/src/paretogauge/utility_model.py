"""Utility points, utility sets, canonical orders and the Hausdorff metric.

Points are plain 1-D float arrays; finite utility sets wrap a read-only
``(m, n)`` array.  Convex sets given by linear constraints are handled
through :class:`HalfspaceSet` and turned into point clouds with
:func:`discretize`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import cKDTree

TOL = 1e-9


class DimensionError(ValueError):
    """Raised when points or sets of different dimension are combined."""


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


class Metric(str, enum.Enum):
    L_INFINITY = "L_infinity"
    L_2 = "L_2"
    L_1 = "L_1"

    @property
    def minkowski_p(self) -> float:
        return {"L_infinity": np.inf, "L_2": 2.0, "L_1": 1.0}[self.value]

    def distance(self, a, b) -> float:
        return float(np.linalg.norm(np.asarray(a, float) - np.asarray(b, float), ord=self.minkowski_p))


def as_point(u, *, allow_negative: bool = False) -> np.ndarray:
    """Validate ``u`` as a utility point and return it as a float array."""
    arr = np.array(u, dtype=float, ndmin=1).reshape(-1)
    if arr.size == 0:
        raise DimensionError("a utility point needs at least one coordinate")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"non-finite coordinate in {arr.tolist()}")
    if not allow_negative and np.any(arr < 0):
        raise DomainError(f"negative coordinate in {arr.tolist()}")
    arr.setflags(write=False)
    return arr


def _same_dim(u: np.ndarray, v: np.ndarray) -> None:
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.size} vs {v.size}")


class FiniteUtilitySet:
    """A nonempty finite set of utility points of a common dimension.

    The order of ``points`` is preserved; set-level comparisons
    (:meth:`same_points`, :meth:`issubset`) ignore order and duplicates.
    """

    __slots__ = ("_points",)

    def __init__(self, points):
        arr = np.array(points, dtype=float)
        if arr.ndim == 1 and arr.size:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise DimensionError("a utility set needs a nonempty list of equal-length points")
        if not np.all(np.isfinite(arr)):
            raise DomainError("non-finite coordinate in utility set")
        if np.any(arr < 0):
            bad = arr[np.any(arr < 0, axis=1)][0]
            raise DomainError(f"negative coordinate in point {bad.tolist()}")
        arr.setflags(write=False)
        self._points = arr

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    def __len__(self) -> int:
        return self._points.shape[0]

    def __iter__(self):
        return iter(self._points)

    def __repr__(self) -> str:
        return f"FiniteUtilitySet({self._points.tolist()!r})"

    def __contains__(self, u) -> bool:
        return self.contains(u)

    def contains(self, u, tol: float = TOL) -> bool:
        u = np.asarray(u, dtype=float)
        _same_dim(u, self._points[0])
        return bool(np.any(np.all(np.abs(self._points - u) <= tol, axis=1)))

    def issubset(self, other: "FiniteUtilitySet", tol: float = TOL) -> bool:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        tree = cKDTree(other.points)
        dist, _ = tree.query(self._points, p=np.inf)
        return bool(np.all(dist <= tol))

    def same_points(self, other: "FiniteUtilitySet", tol: float = 0.0) -> bool:
        return self.issubset(other, tol) and other.issubset(self, tol)

    def union(self, *others) -> "FiniteUtilitySet":
        parts = [self._points]
        for o in others:
            o = o.points if isinstance(o, FiniteUtilitySet) else np.atleast_2d(np.asarray(o, float))
            if o.shape[1] != self.dim:
                raise DimensionError(f"dimension mismatch: {self.dim} vs {o.shape[1]}")
            parts.append(o)
        return FiniteUtilitySet(np.vstack(parts))

    def unique(self) -> "FiniteUtilitySet":
        return FiniteUtilitySet(np.unique(self._points, axis=0))

    def to_json(self) -> dict:
        return {"points": self._points.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteUtilitySet":
        if "points" not in obj:
            raise KeyError("points")
        return cls(obj["points"])


def as_set(U) -> FiniteUtilitySet:
    return U if isinstance(U, FiniteUtilitySet) else FiniteUtilitySet(U)


@dataclass(frozen=True)
class HalfspaceSet:
    """``{u >= 0 | weights . u <= bound for every constraint}``.

    Construction probes the bounding box with one LP per axis and
    direction, rejecting empty or unbounded sets.
    """

    n: int
    constraints: tuple[tuple[tuple[float, ...], float], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("n must be >= 1")
        cons = tuple((tuple(float(w) for w in ws), float(b)) for ws, b in self.constraints)
        for ws, _ in cons:
            if len(ws) != self.n:
                raise DimensionError(f"constraint has {len(ws)} weights, expected {self.n}")
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "_bbox", self._probe_bbox())

    @property
    def A(self) -> np.ndarray:
        return np.array([ws for ws, _ in self.constraints], dtype=float).reshape(-1, self.n)

    @property
    def b(self) -> np.ndarray:
        return np.array([b for _, b in self.constraints], dtype=float)

    def _probe_bbox(self) -> tuple[np.ndarray, np.ndarray]:
        A, b = self.A, self.b
        lo, hi = np.zeros(self.n), np.zeros(self.n)
        A_ub = A if len(b) else None
        b_ub = b if len(b) else None
        for k in range(self.n):
            for sign, out in ((1.0, lo), (-1.0, hi)):
                c = np.zeros(self.n)
                c[k] = sign
                res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=[(0, None)] * self.n, method="highs")
                if res.status == 2:
                    raise DomainError("half-space set is empty")
                if res.status == 3:
                    raise DomainError(f"half-space set is unbounded along axis {k}")
                if res.status != 0:
                    raise DomainError(f"bounding-box probe failed: {res.message}")
                out[k] = res.x[k]
        return lo, hi

    @property
    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        return self._bbox

    def slack(self, u) -> np.ndarray:
        """``bound - weights . u`` per constraint (negative means violated)."""
        return self.b - self.A @ np.asarray(u, dtype=float)

    def contains(self, u, tol: float = TOL) -> bool:
        u = np.asarray(u, dtype=float)
        return bool(np.all(u >= -tol) and np.all(self.slack(u) >= -tol))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "constraints": [{"weights": list(ws), "bound": b} for ws, b in self.constraints],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HalfspaceSet":
        return cls(
            int(obj["n"]),
            tuple((tuple(c["weights"]), c["bound"]) for c in obj["constraints"]),
        )


@dataclass(frozen=True)
class SmnFamily:
    """One fast player of capacity ``M`` and ``N - 1`` symmetric players."""

    M: float
    N: int

    def __post_init__(self):
        if not (self.M > 0 and np.isfinite(self.M)):
            raise DomainError(f"M must be a positive real, got {self.M}")
        if int(self.N) != self.N or self.N < 2:
            raise DomainError(f"N must be an integer >= 2, got {self.N}")
        object.__setattr__(self, "M", float(self.M))
        object.__setattr__(self, "N", int(self.N))

    def to_json(self) -> dict:
        return {"M": self.M, "N": self.N}

    @classmethod
    def from_json(cls, obj: dict) -> "SmnFamily":
        return cls(obj["M"], obj["N"])


def dominates(u, v) -> bool:
    """``u <= v`` in every coordinate (i.e. ``v`` weakly dominates ``u``)."""
    u, v = as_point(u), as_point(v)
    _same_dim(u, v)
    return bool(np.all(u <= v))


def strictly_dominated_by_all_coords(u, v) -> bool:
    """``u_k < v_k`` for every ``k``."""
    u, v = as_point(u), as_point(v)
    _same_dim(u, v)
    return bool(np.all(u < v))


def directed_distance(A, B, metric: Metric | str = Metric.L_INFINITY) -> float:
    """``max_{a in A} min_{b in B} d(a, b)``."""
    A, B = np.atleast_2d(np.asarray(A, float)), np.atleast_2d(np.asarray(B, float))
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    dist, _ = cKDTree(B).query(A, p=Metric(metric).minkowski_p)
    return float(np.max(dist))


def hausdorff(A, B, metric: Metric | str = Metric.L_INFINITY) -> float:
    """Hausdorff distance between two finite point sets."""
    A = A.points if isinstance(A, FiniteUtilitySet) else A
    B = B.points if isinstance(B, FiniteUtilitySet) else B
    return max(directed_distance(A, B, metric), directed_distance(B, A, metric))


def discretize(H: HalfspaceSet, resolution: int) -> FiniteUtilitySet:
    """Feasible points of a uniform ``resolution``-per-axis grid over H's bounding box."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    lo, hi = H.bounding_box
    axes = [np.linspace(lo[k], hi[k], resolution) for k in range(H.n)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, H.n)
    if len(H.constraints):
        keep = np.all(grid @ H.A.T <= H.b + TOL, axis=1)
        grid = grid[keep]
    if grid.shape[0] == 0:
        raise DomainError(f"no grid point is feasible at resolution {resolution}")
    # the bbox probe may return -0.0 or tiny negatives from the LP solver
    grid = np.maximum(grid, 0.0)
    return FiniteUtilitySet(grid)


def smn_halfspaces(F: SmnFamily) -> HalfspaceSet:
    """``{u >= 0 | u_1 / M + u_2 + ... + u_N <= 1}``."""
    weights = (1.0 / F.M,) + (1.0,) * (F.N - 1)
    return HalfspaceSet(F.N, ((weights, 1.0),))


def log_map(A) -> np.ndarray:
    """Coordinatewise natural log of every point; rejects nonpositive coordinates."""
    pts = A.points if isinstance(A, FiniteUtilitySet) else np.atleast_2d(np.asarray(A, float))
    bad = np.any(pts <= 0, axis=1)
    if np.any(bad):
        raise DomainError(f"log undefined at point {pts[bad][0].tolist()}")
    return np.log(pts)


def points_of(U) -> np.ndarray:
    return U.points if isinstance(U, FiniteUtilitySet) else np.atleast_2d(np.asarray(U, float))


__all__ = [
    "TOL",
    "DimensionError",
    "DomainError",
    "Metric",
    "FiniteUtilitySet",
    "HalfspaceSet",
    "SmnFamily",
    "as_point",
    "as_set",
    "dominates",
    "strictly_dominated_by_all_coords",
    "directed_distance",
    "hausdorff",
    "discretize",
    "smn_halfspaces",
    "log_map",
    "points_of",
]
