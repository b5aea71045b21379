"""Policy functions, closed-form allocations on S_{M,N}, Braess and f-increasing checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .indexes import (
    ARITHMETIC,
    GEOMETRIC,
    HARMONIC,
    JAIN,
    MAX,
    MIN,
    IndexSpec,
    eval_index_many,
)
from .utility_model import TOL, DomainError, FiniteUtilitySet, SmnFamily, as_point, as_set


class TieBreak(str, enum.Enum):
    LEX_MIN = "lex_min"
    LEX_MAX = "lex_max"


@dataclass(frozen=True)
class PolicySpec:
    """``index_opt`` (maximise an index), ``maxmin`` (leximin) or ``fixed`` (a given point)."""

    kind: str
    index: Optional[IndexSpec] = None
    tiebreak: TieBreak = TieBreak.LEX_MAX
    point: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        if self.kind not in ("index_opt", "maxmin", "fixed"):
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.kind == "index_opt" and not isinstance(self.index, IndexSpec):
            raise ValueError("index_opt policy needs an IndexSpec")
        if self.kind == "fixed":
            if self.point is None:
                raise ValueError("fixed policy needs a point")
            object.__setattr__(self, "point", tuple(float(x) for x in as_point(self.point)))
        object.__setattr__(self, "tiebreak", TieBreak(self.tiebreak))

    @property
    def label(self) -> str:
        if self.kind == "index_opt":
            return f"argmax[{self.index.label}]/{self.tiebreak.value}"
        if self.kind == "maxmin":
            return f"maxmin/{self.tiebreak.value}"
        return f"fixed{self.point}"

    def to_json(self) -> dict:
        if self.kind == "index_opt":
            return {"kind": "index_opt", "index": self.index.to_json(), "tiebreak": self.tiebreak.value}
        if self.kind == "maxmin":
            return {"kind": "maxmin", "tiebreak": self.tiebreak.value}
        return {"kind": "fixed", "point": list(self.point)}

    @classmethod
    def from_json(cls, obj: dict) -> "PolicySpec":
        kind = obj["kind"]
        tb = obj.get("tiebreak", "lex_max")
        if kind == "index_opt":
            return cls(kind, IndexSpec.from_json(obj["index"]), tb)
        if kind == "maxmin":
            return cls(kind, tiebreak=tb)
        if kind == "fixed":
            return cls(kind, point=tuple(obj["point"]))
        raise ValueError(f"unknown policy kind {kind!r}")


def index_opt(f: IndexSpec, tiebreak: TieBreak | str = TieBreak.LEX_MAX) -> PolicySpec:
    return PolicySpec("index_opt", f, TieBreak(tiebreak))


def max_min_fair(tiebreak: TieBreak | str = TieBreak.LEX_MAX) -> PolicySpec:
    return PolicySpec("maxmin", tiebreak=TieBreak(tiebreak))


def fixed(point) -> PolicySpec:
    return PolicySpec("fixed", point=tuple(point))


def _lex_pick(P: np.ndarray, tiebreak: TieBreak) -> int:
    order = np.lexsort([P[:, k] for k in reversed(range(P.shape[1]))])
    return int(order[-1] if tiebreak is TieBreak.LEX_MAX else order[0])


def _leximin_best(P: np.ndarray) -> np.ndarray:
    """Indices of rows whose ascending-sorted coordinates are lexicographically maximal."""
    keys = np.sort(P, axis=1)
    cand = np.arange(P.shape[0])
    for k in range(P.shape[1]):
        col = keys[cand, k]
        cand = cand[col == col.max()]
    return cand


def apply_policy(p: PolicySpec, U) -> np.ndarray:
    """The point of ``U`` selected by policy ``p``."""
    U = as_set(U)
    P = U.points
    if p.kind == "fixed":
        x = np.asarray(p.point)
        if x.shape[0] != U.dim or not U.contains(x):
            raise DomainError(f"fixed point {list(p.point)} is not in the utility set")
        return as_point(x)
    if p.kind == "maxmin":
        cand = _leximin_best(P)
    else:
        vals = eval_index_many(p.index, P)
        ok = np.flatnonzero(~np.isnan(vals))
        if ok.size == 0:
            raise DomainError(f"no point of the set lies in the domain of {p.index.label}")
        best = vals[ok].max()
        cand = ok[vals[ok] >= best - TOL * max(1.0, abs(best))]
    return as_point(P[cand[_lex_pick(P[cand], p.tiebreak)]])


# every built-in policy, used wherever a claim must hold "for all policies"
def policy_catalog(n: int = 2) -> list[PolicySpec]:
    indexes = [
        ARITHMETIC,
        MIN,
        MAX,
        GEOMETRIC,
        HARMONIC,
        JAIN,
        IndexSpec("quasi", 2.0),
        IndexSpec("quasi", -2.0),
        IndexSpec("quasi", 0.0),
        IndexSpec("owa", weights=tuple(np.linspace(1.0, 0.1, n))),
    ]
    out = []
    for tb in TieBreak:
        out.extend(index_opt(f, tb) for f in indexes)
        out.append(max_min_fair(tb))
    return out


SMN_CLOSED_FORMS = ("sum", "min", "product")


def smn_closed_form(which: str, F: SmnFamily) -> np.ndarray:
    """Exact optimiser of sum, min or product over S_{M,N}."""
    M, N = F.M, F.N
    if which == "sum":
        u = np.zeros(N)
        u[0] = M
    elif which == "min":
        u = np.full(N, 1.0 / (N - 1 + 1.0 / M))
    elif which == "product":
        u = np.full(N, 1.0 / N)
        u[0] = M / N
    else:
        raise ValueError(f"closed form must be one of {SMN_CLOSED_FORMS}, got {which!r}")
    return as_point(u)


@dataclass(frozen=True)
class BraessWitness:
    U1: FiniteUtilitySet
    U2: FiniteUtilitySet
    a1: np.ndarray
    a2: np.ndarray


def braess_detect(p: PolicySpec, U1, U2) -> Optional[BraessWitness]:
    """A witness if growing ``U1`` into ``U2`` makes every player strictly worse off."""
    U1, U2 = as_set(U1), as_set(U2)
    if not U1.issubset(U2):
        raise DomainError("U1 is not a subset of U2")
    a1, a2 = apply_policy(p, U1), apply_policy(p, U2)
    if np.all(a2 < a1):
        return BraessWitness(U1, U2, a1, a2)
    return None


class Violation(NamedTuple):
    index: int
    before: float
    after: float


def check_f_increasing(p: PolicySpec, f: IndexSpec, chain: Sequence) -> Optional[Violation]:
    """First step of a nested chain where ``f`` of the chosen point drops."""
    chain = [as_set(U) for U in chain]
    for i in range(len(chain) - 1):
        if not chain[i].issubset(chain[i + 1]):
            raise DomainError(f"chain is not nested at position {i}")
    values = [float(eval_index_many(f, apply_policy(p, U)[None, :])[0]) for U in chain]
    for i in range(len(values) - 1):
        if values[i] > values[i + 1] + TOL:
            return Violation(i, values[i], values[i + 1])
    return None


class CrossViolation(NamedTuple):
    x1: np.ndarray
    x2: np.ndarray
    chain: list


def find_cross_index_violation(
    f: IndexSpec, g: IndexSpec, n: int = 2, trials: int = 10000, seed: int = 0
) -> Optional[CrossViolation]:
    """Search for ``x1, x2`` ranked one way by ``f`` and the other way by ``g``.

    With ``f(x1) < f(x2)`` and ``g(x2) < g(x1)``, the g-optimiser moves
    from ``x2`` to ``x1`` when ``{x2}`` grows to ``{x1, x2}``, so ``f`` of its
    choice drops.  Coordinates are log-uniform in ``[0.1, 10]``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    X1 = 10.0 ** rng.uniform(-1.0, 1.0, size=(trials, n))
    X2 = 10.0 ** rng.uniform(-1.0, 1.0, size=(trials, n))
    margin = 1e-6
    hit = (eval_index_many(f, X1) < eval_index_many(f, X2) - margin) & (
        eval_index_many(g, X2) < eval_index_many(g, X1) - margin
    )
    idx = np.flatnonzero(hit)
    if idx.size == 0:
        return None
    x1, x2 = as_point(X1[idx[0]]), as_point(X2[idx[0]])
    chain = [FiniteUtilitySet([x2]), FiniteUtilitySet([x1, x2])]
    return CrossViolation(x1, x2, chain)


__all__ = [
    "TieBreak",
    "PolicySpec",
    "index_opt",
    "max_min_fair",
    "fixed",
    "apply_policy",
    "policy_catalog",
    "SMN_CLOSED_FORMS",
    "smn_closed_form",
    "BraessWitness",
    "braess_detect",
    "Violation",
    "check_f_increasing",
    "CrossViolation",
    "find_cross_index_violation",
]
