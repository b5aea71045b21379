"""Inefficiency measures: index ratio (price of anarchy), SDF and log-space distance to the front.

All three compare a selected point ``beta`` of a utility set ``U`` with
the rest of ``U``:

* ``poa_instance``  -- ``max_u f(u) / f(beta)``
* ``sdf_instance``  -- ``max_u min_k u_k / beta_k``
* ``topo_instance`` -- ``exp`` of the L-infinity log-space distance from
  ``beta`` to the Pareto front of ``U``
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .indexes import ARITHMETIC, GEOMETRIC, MIN, IndexSpec, eval_index, eval_index_many
from .pareto import Expansion, expand_contains, front_array
from .policies import SMN_CLOSED_FORMS, PolicySpec, apply_policy, smn_closed_form
from .utility_model import (
    DomainError,
    FiniteUtilitySet,
    SmnFamily,
    as_point,
    as_set,
    discretize,
    smn_halfspaces,
)

# slack on both sides of the SDF lemma, so boundary cases resolve identically
_LEMMA_TOL = 1e-12


def _require_member(beta: np.ndarray, U: FiniteUtilitySet) -> None:
    if not U.contains(beta):
        raise DomainError(f"selected point {beta.tolist()} is not in the utility set")


def _require_positive(beta: np.ndarray) -> None:
    if np.any(beta <= 0):
        raise DomainError(f"selected point must be strictly positive, got {beta.tolist()}")


def poa_instance(f: IndexSpec, beta_point, U, *, return_witness: bool = False):
    """``max_{u in U} f(u) / f(beta)``; 1 when ``beta`` maximises ``f``."""
    U, beta = as_set(U), as_point(beta_point)
    _require_member(beta, U)
    fb = eval_index(f, beta)
    if fb == 0:
        raise DomainError(f"{f.label} vanishes at the selected point; the ratio is undefined")
    vals = eval_index_many(f, U.points)
    i = int(np.nanargmax(vals))
    ratio = float(vals[i] / fb)
    return (ratio, as_point(U.points[i])) if return_witness else ratio


def poa_smn_nbs(F: SmnFamily) -> float:
    """Sum-inefficiency of the product optimiser on S_{M,N}: ``MN / (M + N - 1)``."""
    return F.M * F.N / (F.M + F.N - 1)


def poa_smn_maxmin(F: SmnFamily) -> float:
    """Sum-inefficiency of the max-min optimiser on S_{M,N}: ``(M(N-1) + 1) / N``."""
    return (F.M * (F.N - 1) + 1) / F.N


def _sdf_ratios(beta: np.ndarray, P: np.ndarray) -> np.ndarray:
    return np.min(P / beta, axis=1)


def sdf_instance(beta_point, U, *, return_witness: bool = False):
    """``max_{u in U} min_k u_k / beta_k``; above 1 iff ``beta`` is strictly dominated."""
    U, beta = as_set(U), as_point(beta_point)
    _require_positive(beta)
    r = _sdf_ratios(beta, U.points)
    i = int(np.argmax(r))
    return (float(r[i]), as_point(U.points[i])) if return_witness else float(r[i])


def sdf_lemma_check(beta_point, U, eps: float) -> tuple[bool, bool]:
    """Both sides of ``log SDF <= eps  <=>  log U within (log beta + eps) [+] lower orthant``.

    The right side asks, for every ``u``, for some coordinate with
    ``log u_k <= log beta_k + eps``; zero coordinates count as ``-inf``.
    """
    U, beta = as_set(U), as_point(beta_point)
    _require_positive(beta)
    sdf = sdf_instance(beta, U)
    left = math.log(sdf) if sdf > 0 else -math.inf
    with np.errstate(divide="ignore"):
        logs = np.log(U.points)
    left_ok = left <= eps + _LEMMA_TOL
    shifted = np.log(beta) + eps + _LEMMA_TOL
    right_ok = bool(np.all(np.any(logs <= shifted, axis=1)))
    return bool(left_ok), right_ok


def _log_distances(beta: np.ndarray, front: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.max(np.abs(np.log(front) - np.log(beta)), axis=1)


def topo_both_forms(beta_point, U) -> tuple[float, float, np.ndarray]:
    """``(exp-of-log-distance, min-max-ratio, nearest front point)``."""
    U, beta = as_set(U), as_point(beta_point)
    _require_positive(beta)
    _require_member(beta, U)
    front = front_array(U.points)
    d = _log_distances(beta, front)
    i = int(np.argmin(d))
    with np.errstate(divide="ignore"):
        ratios = np.maximum(beta / front, front / beta)
    ratio_form = float(np.min(np.max(ratios, axis=1)))
    return float(math.exp(d[i])), ratio_form, as_point(front[i])


def topo_instance(beta_point, U) -> float:
    """``exp`` of the L-infinity log-space distance from ``beta`` to the front of ``U``.

    Front points with a zero coordinate are infinitely far from a
    positive ``beta`` and never realise the minimum.
    """
    return topo_both_forms(beta_point, U)[0]


def topo_expansion_check(beta_point, U, eps: float) -> bool:
    """Whether ``beta`` lies in ``front(U) (x) exp(eps)``."""
    U, beta = as_set(U), as_point(beta_point)
    _require_positive(beta)
    _require_member(beta, U)
    front = front_array(U.points)
    front = front[np.all(front > 0, axis=1)]
    return expand_contains(Expansion(FiniteUtilitySet(front), factor=math.exp(eps)), beta)


@dataclass(frozen=True)
class InefficiencyReport:
    beta_point: np.ndarray
    sdf: float
    topo: Optional[float]
    poa: Optional[float] = None
    f_used: Optional[IndexSpec] = None
    witnesses: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "beta_point": self.beta_point.tolist(),
            "poa": self.poa,
            "sdf": self.sdf,
            "topo": self.topo,
            "f_used": self.f_used.to_json() if self.f_used is not None else None,
            "witnesses": {k: v.tolist() for k, v in self.witnesses.items()},
            "notes": list(self.notes),
        }


def inefficiency_report(beta_point, U, f: Optional[IndexSpec] = None) -> InefficiencyReport:
    """All three measures for one ``(beta, U)`` instance, with the points realising them."""
    U, beta = as_set(U), as_point(beta_point)
    witnesses = {}
    poa = None
    if f is not None:
        poa, witnesses["poa"] = poa_instance(f, beta, U, return_witness=True)
    sdf, witnesses["sdf"] = sdf_instance(beta, U, return_witness=True)
    topo, ratio_form, nearest = topo_both_forms(beta, U)
    witnesses["topo"] = nearest
    notes = ()
    if abs(topo - ratio_form) > 1e-9 * topo:
        notes = (f"log-distance form {topo!r} and ratio form {ratio_form!r} disagree",)
    return InefficiencyReport(beta, sdf, topo, poa, f, witnesses, notes)


@dataclass(frozen=True)
class SweepRow:
    M: float
    N: int
    policy: str
    measure: str
    value: float


_MEASURES = {"poa-sum": ARITHMETIC, "poa-min": MIN, "poa-product": GEOMETRIC}


def smn_utility_set(F: SmnFamily, resolution: Optional[int] = None) -> FiniteUtilitySet:
    """The three closed-form optima of S_{M,N}, plus a grid when ``resolution`` is given."""
    closed = np.array([smn_closed_form(w, F) for w in SMN_CLOSED_FORMS])
    if resolution is None:
        return FiniteUtilitySet(closed)
    return discretize(smn_halfspaces(F), resolution).union(closed)


def sweep_family(
    policy: Union[str, PolicySpec],
    measure: Union[str, IndexSpec],
    Ms: Sequence[float],
    N: int,
    resolution: Optional[int] = None,
) -> list[SweepRow]:
    """Evaluate one measure of one policy along S_{M,N} for each ``M``.

    ``policy`` is a closed-form label (``sum``, ``min``, ``product``) or a
    :class:`PolicySpec` applied to the (optionally gridded) set.
    ``measure`` is ``poa-sum``, ``poa-min``, ``poa-product``, ``sdf``,
    ``topo`` or an :class:`IndexSpec` for an index ratio.
    """
    if not len(Ms):
        raise ValueError("Ms must be nonempty")
    if isinstance(measure, IndexSpec):
        f, mlabel = measure, f"poa-{measure.label}"
    elif measure in _MEASURES:
        f, mlabel = _MEASURES[measure], measure
    elif measure in ("sdf", "topo"):
        f, mlabel = None, measure
    else:
        raise ValueError(f"unknown measure {measure!r}")
    plabel = policy if isinstance(policy, str) else policy.label

    rows = []
    for M in sorted(float(m) for m in Ms):
        F = SmnFamily(M, N)
        U = smn_utility_set(F, resolution)
        if isinstance(policy, str):
            beta = smn_closed_form(policy, F)
        else:
            beta = apply_policy(policy, U)
        if f is not None:
            value = poa_instance(f, beta, U)
        elif mlabel == "sdf":
            value = sdf_instance(beta, U)
        else:
            value = topo_instance(beta, U)
        rows.append(SweepRow(M, F.N, plabel, mlabel, value))
    return rows


SWEEP_HEADER = ("M", "N", "policy", "measure", "value")


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for r in rows:
        w.writerow([_fmt(r.M), r.N, r.policy, r.measure, _fmt(r.value)])
    return buf.getvalue()


def sweep_from_csv(text: str) -> list[SweepRow]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != SWEEP_HEADER:
        raise ValueError(f"sweep CSV header must be {','.join(SWEEP_HEADER)}")
    return [
        SweepRow(float(r["M"]), int(r["N"]), r["policy"], r["measure"], float(r["value"]))
        for r in reader
    ]


__all__ = [
    "poa_instance",
    "poa_smn_nbs",
    "poa_smn_maxmin",
    "sdf_instance",
    "sdf_lemma_check",
    "topo_both_forms",
    "topo_instance",
    "topo_expansion_check",
    "InefficiencyReport",
    "inefficiency_report",
    "SweepRow",
    "smn_utility_set",
    "sweep_family",
    "sweep_to_csv",
    "sweep_from_csv",
]
