"""Index (aggregation operator) catalog and empirical monotonicity checks.

The arithmetic and geometric indexes are the raw sum and product; only
the quasi-arithmetic family is mean-normalised.  Jain is the
``n``-normalised form ``(sum u)^2 / (n sum u^2)``, valued ``1/n`` at the
origin.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from .utility_model import DimensionError, DomainError, as_point

KINDS = ("arithmetic", "min", "max", "geometric", "harmonic", "quasi", "jain", "owa")

_ALIASES = {
    "sum": "arithmetic",
    "mean": "arithmetic",
    "product": "geometric",
    "prod": "geometric",
    "nbs": "geometric",
    "minimum": "min",
    "maximum": "max",
    "quasi_arithmetic": "quasi",
}


@dataclass(frozen=True)
class IndexSpec:
    kind: str
    delta: Optional[float] = None
    weights: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        kind = _ALIASES.get(self.kind.lower(), self.kind.lower())
        if kind not in KINDS:
            raise ValueError(f"unknown index kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == "quasi":
            if self.delta is None or math.isnan(float(self.delta)):
                raise ValueError("quasi-arithmetic index needs a delta in [-inf, +inf]")
            object.__setattr__(self, "delta", float(self.delta))
        elif self.delta is not None:
            raise ValueError(f"{kind} index takes no delta")
        if kind == "owa":
            if self.weights is None:
                raise ValueError("OWA index needs weights")
            w = tuple(float(x) for x in self.weights)
            if not w or any(x < 0 for x in w) or not any(x > 0 for x in w):
                raise ValueError("OWA weights must be nonnegative and not all zero")
            object.__setattr__(self, "weights", w)
        elif self.weights is not None:
            raise ValueError(f"{kind} index takes no weights")

    @property
    def label(self) -> str:
        if self.kind == "quasi":
            return f"quasi({self.delta:g})"
        if self.kind == "owa":
            return "owa(" + ",".join(f"{w:g}" for w in self.weights) + ")"
        return self.kind

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "quasi":
            d = self.delta
            out["delta"] = d if math.isfinite(d) else ("inf" if d > 0 else "-inf")
        if self.kind == "owa":
            out["weights"] = list(self.weights)
        return out

    @classmethod
    def from_json(cls, obj) -> "IndexSpec":
        if isinstance(obj, str):
            return cls(obj)
        delta = obj.get("delta")
        if isinstance(delta, str):
            delta = float(delta)
        weights = obj.get("weights")
        return cls(obj["kind"], delta, tuple(weights) if weights is not None else None)


ARITHMETIC = IndexSpec("arithmetic")
MIN = IndexSpec("min")
MAX = IndexSpec("max")
GEOMETRIC = IndexSpec("geometric")
HARMONIC = IndexSpec("harmonic")
JAIN = IndexSpec("jain")


def _needs_positive(f: IndexSpec) -> bool:
    return f.kind == "harmonic" or (f.kind == "quasi" and f.delta < 0)


def eval_index_many(f: IndexSpec, points) -> np.ndarray:
    """Vectorised index values for an ``(m, n)`` array.

    Rows outside the index domain (zero coordinates under harmonic or
    negative-delta quasi-arithmetic) evaluate to NaN.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    m, n = P.shape
    kind = f.kind
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if kind == "arithmetic":
            vals = P.sum(axis=1)
        elif kind == "min":
            vals = P.min(axis=1)
        elif kind == "max":
            vals = P.max(axis=1)
        elif kind == "geometric":
            vals = P.prod(axis=1)
        elif kind == "harmonic":
            vals = 1.0 / np.sum(1.0 / P, axis=1)
        elif kind == "jain":
            s = P.sum(axis=1)
            q = np.sum(P * P, axis=1)
            vals = np.where(q > 0, s * s / (n * np.where(q > 0, q, 1.0)), 1.0 / n)
        elif kind == "owa":
            if len(f.weights) != n:
                raise DimensionError(f"OWA has {len(f.weights)} weights, point has {n} coordinates")
            vals = np.sort(P, axis=1) @ np.asarray(f.weights)
        else:
            d = f.delta
            if d == math.inf:
                vals = P.max(axis=1)
            elif d == -math.inf:
                vals = P.min(axis=1)
            elif d == 0.0:
                vals = np.exp(np.mean(np.log(P), axis=1))
            else:
                # power mean in log space; stays finite for large |delta|
                vals = np.exp((logsumexp(d * np.log(P), axis=1) - math.log(n)) / d)
    vals = np.asarray(vals, dtype=float)
    if _needs_positive(f):
        vals = np.where(np.all(P > 0, axis=1), vals, np.nan)
    return vals


def eval_index(f: IndexSpec, u) -> float:
    """Value of index ``f`` at point ``u``."""
    u = as_point(u)
    if _needs_positive(f) and np.any(u <= 0):
        raise DomainError(f"{f.label} index needs strictly positive coordinates, got {u.tolist()}")
    return float(eval_index_many(f, u[None, :])[0])


def jain_fair_point(u) -> float:
    """The reference share ``sum u^2 / sum u`` of the Jain interpretation."""
    u = as_point(u)
    s = float(np.sum(u))
    if s <= 0:
        raise DomainError("fair point undefined for the all-zero point")
    return float(np.sum(u * u)) / s


def jain_relative(u, v) -> float:
    """Jain index of the ratios ``u_i / v_i`` against a reference point ``v``."""
    u, v = as_point(u), as_point(v)
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.size} vs {v.size}")
    if np.any(v <= 0):
        raise DomainError(f"reference point must be strictly positive, got {v.tolist()}")
    return eval_index(JAIN, u / v)


class Monotonicity(str, enum.Enum):
    STRICTLY_MONOTONE = "StrictlyMonotone"
    MONOTONE_NOT_STRICT = "MonotoneNotStrict"
    NON_MONOTONE = "NonMonotone"


@dataclass(frozen=True)
class MonotonicityVerdict:
    verdict: Monotonicity
    witness: Optional[tuple[tuple[float, ...], tuple[float, ...]]] = None


# what the randomized search has to agree with for the catalog indexes
EXPECTED_MONOTONICITY = {
    "arithmetic": Monotonicity.STRICTLY_MONOTONE,
    "geometric": Monotonicity.STRICTLY_MONOTONE,
    "harmonic": Monotonicity.STRICTLY_MONOTONE,
    "min": Monotonicity.MONOTONE_NOT_STRICT,
    "max": Monotonicity.MONOTONE_NOT_STRICT,
    "jain": Monotonicity.NON_MONOTONE,
}


def classify_monotonicity(f: IndexSpec, n: int, trials: int = 10000, seed: int = 0) -> MonotonicityVerdict:
    """Randomized search for monotonicity violations of ``f`` in dimension ``n``.

    Each trial draws ``u`` uniformly in ``(0, 10]^n`` and a perturbed
    copy ``v`` with a random nonempty subset of coordinates raised, so
    ``u < v``.  A pair with ``f(u) > f(v)`` makes the index non-monotone;
    a pair with ``f(u) == f(v)`` makes it non-strict.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    u = 10.0 * (1.0 - rng.random((trials, n)))
    mask = rng.random((trials, n)) < 0.5
    empty = ~mask.any(axis=1)
    mask[empty, rng.integers(0, n, size=int(empty.sum()))] = True
    bump = rng.uniform(0.01, 5.0, size=(trials, n))
    v = u + np.where(mask, bump, 0.0)
    fu, fv = eval_index_many(f, u), eval_index_many(f, v)
    scale = np.maximum(1.0, np.abs(fv))

    drop = np.flatnonzero(fu > fv + 1e-12 * scale)
    if drop.size:
        i = drop[0]
        return MonotonicityVerdict(Monotonicity.NON_MONOTONE, (tuple(u[i]), tuple(v[i])))
    flat = np.flatnonzero(fu == fv)
    if flat.size:
        i = flat[0]
        return MonotonicityVerdict(Monotonicity.MONOTONE_NOT_STRICT, (tuple(u[i]), tuple(v[i])))
    return MonotonicityVerdict(Monotonicity.STRICTLY_MONOTONE)


__all__ = [
    "KINDS",
    "IndexSpec",
    "ARITHMETIC",
    "MIN",
    "MAX",
    "GEOMETRIC",
    "HARMONIC",
    "JAIN",
    "eval_index",
    "eval_index_many",
    "jain_fair_point",
    "jain_relative",
    "Monotonicity",
    "MonotonicityVerdict",
    "EXPECTED_MONOTONICITY",
    "classify_monotonicity",
]
