"""Executable counterexamples: each demo builds a concrete instance and checks the claimed phenomenon.

``passed`` always means "the phenomenon was exhibited", computed from
the raw operations.  Control variants (other tie-breaks, other indexes,
other caps) are expected to come back with ``passed == False``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .indexes import ARITHMETIC, GEOMETRIC, JAIN, IndexSpec, eval_index, eval_index_many
from .pareto import is_pareto_optimal
from .policies import (
    PolicySpec,
    TieBreak,
    apply_policy,
    braess_detect,
    index_opt,
    max_min_fair,
    policy_catalog,
)
from .utility_model import (
    DomainError,
    FiniteUtilitySet,
    HalfspaceSet,
    Metric,
    discretize,
    hausdorff,
)


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in np.atleast_2d(self.rows):
            w.writerow([repr(float(x)) for x in r])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Table":
        rows = list(csv.reader(io.StringIO(text)))
        data = np.array([[float(x) for x in r] for r in rows[1:]], dtype=float)
        return cls(tuple(rows[0]), data.reshape(-1, len(rows[0])))


@dataclass(frozen=True)
class DemoReport:
    name: str
    passed: bool
    narrative: str
    artifacts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "narrative": self.narrative,
            "artifacts": {
                k: {"columns": list(t.columns), "rows": np.atleast_2d(t.rows).tolist()}
                for k, t in self.artifacts.items()
            },
        }

    def write_csvs(self, directory) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        out = []
        for key, table in self.artifacts.items():
            path = directory / f"{self.name}_{key}.csv"
            path.write_text(table.to_csv())
            out.append(path)
        return out


def _tilted_triangle(tilt: float) -> HalfspaceSet:
    return HalfspaceSet(2, (((1.0, 1.0 + tilt), 1.0),))


def demo_sum_discontinuity(theta: float = 0.01, resolution: int = 201) -> DemoReport:
    """Sum-optimisation jumps between two nearby triangles.

    ``x + (1 - theta) y <= 1`` and ``x + (1 + theta) y <= 1`` are within
    about ``2 theta`` of each other, but the sum optimiser picks the
    ``y``-axis vertex in the first and ``(1, 0)`` in the second.
    """
    if theta == 0:
        raise ValueError("theta must be nonzero")
    if abs(theta) > 0.1:
        raise ValueError("|theta| must be at most 0.1")
    lo = discretize(_tilted_triangle(-theta), resolution)
    hi = discretize(_tilted_triangle(theta), resolution)
    dist = hausdorff(lo, hi, Metric.L_INFINITY)
    policy = index_opt(ARITHMETIC)
    a_lo, a_hi = apply_policy(policy, lo), apply_policy(policy, hi)
    jump = float(np.max(np.abs(a_lo - a_hi)))
    passed = dist <= 3 * abs(theta) and jump >= 0.9
    narrative = (
        f"Triangles tilted by -/+{abs(theta):g} lie {dist:.4g} apart (Hausdorff, L_inf); "
        f"the sum optimiser moves from {a_lo.tolist()} to {a_hi.tolist()}, a jump of {jump:.4g}."
    )
    artifacts = {
        "allocations": Table(("tilt", "x", "y"), np.array([[-theta, *a_lo], [theta, *a_hi]])),
        "summary": Table(("theta", "hausdorff", "jump"), np.array([[theta, dist, jump]])),
    }
    return DemoReport("sum_discontinuity", bool(passed), narrative, artifacts)


PATH_B = (0.5, 1.5)


def demo_pareto_policy_jump(p: PolicySpec, steps: int = 100) -> DemoReport:
    """Follow ``U_t = {(1, t), (0.5, 1.5)}`` for ``t`` from 1.4 down to 0.6.

    Both points are always Pareto-optimal, consecutive sets are ``0.8 /
    steps`` apart, and the demo passes when the choice switches between
    them somewhere along the path (a jump of at least 0.5 in L_inf).
    """
    ts = np.linspace(1.4, 0.6, steps + 1)
    B = np.array(PATH_B)
    chosen = []
    try:
        for t in ts:
            U = FiniteUtilitySet([[1.0, t], B])
            a = apply_policy(p, U)
            if not is_pareto_optimal(a, U):
                raise DomainError(f"policy picked a dominated point at t={t:g}")
            chosen.append(a)
    except DomainError as exc:
        return DemoReport("pareto_policy_jump", False, f"{p.label}: {exc}")
    chosen = np.array(chosen)
    picks_b = np.all(chosen == B, axis=1)
    switches = np.flatnonzero(picks_b[1:] != picks_b[:-1])
    rows = np.column_stack([ts, chosen, picks_b.astype(float)])
    artifacts = {"path": Table(("t", "x", "y", "picks_B"), rows)}
    if switches.size == 0:
        return DemoReport(
            "pareto_policy_jump", False, f"{p.label}: the choice never switches along the path", artifacts
        )
    i = int(switches[0])
    jump = float(np.max(np.abs(chosen[i + 1] - chosen[i])))
    step = float(abs(ts[i + 1] - ts[i]))
    crossing = float(0.5 * (ts[i] + ts[i + 1]))
    passed = jump >= 0.4 and step <= 0.8 / steps + 1e-12
    artifacts["switch"] = Table(("t_before", "t_after", "crossing", "jump"), np.array([[ts[i], ts[i + 1], crossing, jump]]))
    narrative = (
        f"{p.label}: choice switches between t={ts[i]:.4g} and t={ts[i + 1]:.4g} "
        f"(sets {step:.3g} apart), jumping {jump:.3g}. The path coordinates are one "
        f"instantiation of the two-point construction."
    )
    return DemoReport("pareto_policy_jump", bool(passed), narrative, artifacts)


def demo_convex_nonmonotone(points: int = 101) -> DemoReport:
    """No policy can dominate both forced singleton choices on the segment.

    On ``{(0, 1)}`` and ``{(1, 0)}`` every policy must return the only point;
    a monotone policy would then need a point of the segment
    ``{(x, 1 - x)}`` above ``(1, 1)``.
    """
    x = np.linspace(0.0, 1.0, points)
    U3 = FiniteUtilitySet(np.column_stack([x, 1.0 - x]))
    e1, e2 = np.array([0.0, 1.0]), np.array([1.0, 0.0])
    rows, lines = [], []
    ok = True
    for k, p in enumerate(policy_catalog(2)):
        a3 = apply_policy(p, U3)
        both = bool(np.all(a3 >= e1) and np.all(a3 >= e2))
        ok &= not both
        rows.append([k, *a3, float(both)])
        lines.append(f"{p.label} -> {a3.tolist()}")
    narrative = "segment choices: " + "; ".join(lines)
    artifacts = {"choices": Table(("policy", "x", "y", "dominates_both"), np.array(rows))}
    return DemoReport("convex_nonmonotone", bool(ok), narrative, artifacts)


def demo_jain_maxmin_flaw(cap: float = 0.5, resolution: int = 81) -> DemoReport:
    """The max-min fair point of ``{y <= cap, x + y <= 2}`` can have a sub-optimal Jain index."""
    H = HalfspaceSet(2, (((0.0, 1.0), cap), ((1.0, 1.0), 2.0)))
    U = discretize(H, resolution)
    m = apply_policy(max_min_fair(), U)
    jain_m = eval_index(JAIN, m)
    jvals = eval_index_many(JAIN, U.points)
    best = float(np.max(jvals))
    flawed = jain_m < best - 1e-9
    narrative = (
        f"cap={cap:g}: max-min fair point {m.tolist()} has Jain {jain_m:.6g} "
        f"while the set reaches Jain {best:.6g}" + ("" if flawed else " (no flaw for this cap)")
    )
    artifacts = {"summary": Table(("cap", "x", "y", "jain_maxmin", "jain_best"), np.array([[cap, *m, jain_m, best]]))}
    return DemoReport("jain_maxmin_flaw", bool(flawed), narrative, artifacts)


def demo_jain_nonpareto(index: IndexSpec = JAIN, scale: float = 1.0) -> DemoReport:
    """On ``{(1, 1), (2, 1)}`` the Jain optimiser keeps the dominated point."""
    U = FiniteUtilitySet(np.array([[1.0, 1.0], [2.0, 1.0]]) * scale)
    a = apply_policy(index_opt(index), U)
    vals = eval_index_many(index, U.points)
    dominated = not is_pareto_optimal(a, U)
    narrative = (
        f"{index.label} values {vals.tolist()} on {U.points.tolist()}: picks {a.tolist()}, "
        + ("which is Pareto-dominated" if dominated else "which is Pareto-optimal")
    )
    artifacts = {"values": Table(("x", "y", "index"), np.column_stack([U.points, vals]))}
    return DemoReport("jain_nonpareto", bool(dominated), narrative, artifacts)


def demo_braess_jain(tiebreak: TieBreak | str = TieBreak.LEX_MIN, index: IndexSpec = JAIN) -> DemoReport:
    """Adding ``(1, 1)`` to ``{(2, 2)}`` drags a lex-min Jain optimiser down for everyone."""
    p = index_opt(index, tiebreak)
    U1 = FiniteUtilitySet([[2.0, 2.0]])
    U2 = FiniteUtilitySet([[1.0, 1.0], [2.0, 2.0]])
    w = braess_detect(p, U1, U2)
    if w is None:
        a2 = apply_policy(p, U2)
        narrative = f"{p.label}: picks {a2.tolist()} on the larger set, no Braess paradox"
        return DemoReport("braess_jain", False, narrative)
    narrative = f"{p.label}: alpha(U1)={w.a1.tolist()} strictly above alpha(U2)={w.a2.tolist()}"
    artifacts = {"witness": Table(("set", "x", "y"), np.array([[1, *w.a1], [2, *w.a2]]))}
    return DemoReport("braess_jain", True, narrative, artifacts)


# the constructions as stated, each expected to pass
GALLERY_DEMOS: dict[str, Callable[[], DemoReport]] = {
    "sum-discontinuity": lambda: demo_sum_discontinuity(0.01),
    "pareto-policy-jump-geometric": lambda: demo_pareto_policy_jump(index_opt(GEOMETRIC)),
    "pareto-policy-jump-arithmetic": lambda: demo_pareto_policy_jump(index_opt(ARITHMETIC)),
    "convex-nonmonotone": demo_convex_nonmonotone,
    "jain-maxmin-flaw": demo_jain_maxmin_flaw,
    "jain-nonpareto": demo_jain_nonpareto,
    "braess-jain": demo_braess_jain,
}

# variants that must NOT exhibit the phenomenon
CONTROL_DEMOS: dict[str, Callable[[], DemoReport]] = {
    "pareto-policy-jump-fixed": lambda: demo_pareto_policy_jump(PolicySpec("fixed", point=PATH_B)),
    "jain-maxmin-flaw-cap1": lambda: demo_jain_maxmin_flaw(cap=1.0),
    "jain-nonpareto-arithmetic": lambda: demo_jain_nonpareto(ARITHMETIC),
    "braess-jain-lexmax": lambda: demo_braess_jain(TieBreak.LEX_MAX),
    "braess-arithmetic": lambda: demo_braess_jain(TieBreak.LEX_MIN, ARITHMETIC),
}


def crossing_point(report: DemoReport) -> float:
    """The ``t`` at which a :func:`demo_pareto_policy_jump` run switched."""
    return float(report.artifacts["switch"].rows[0, 2])


__all__ = [
    "Table",
    "DemoReport",
    "demo_sum_discontinuity",
    "demo_pareto_policy_jump",
    "demo_convex_nonmonotone",
    "demo_jain_maxmin_flaw",
    "demo_jain_nonpareto",
    "demo_braess_jain",
    "GALLERY_DEMOS",
    "CONTROL_DEMOS",
    "crossing_point",
]
