"""Runtime property suite backing ``pareto-gauge verify``.

Every property is a function of a seeded generator returning
``(passed, detail)``.  Properties run in declaration order and each gets
its own generator derived from the suite seed, so one property's draw
count never shifts another's.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import demos
from .indexes import (
    ARITHMETIC,
    EXPECTED_MONOTONICITY,
    GEOMETRIC,
    HARMONIC,
    JAIN,
    MAX,
    MIN,
    IndexSpec,
    Monotonicity,
    classify_monotonicity,
    eval_index,
    jain_fair_point,
)
from .inefficiency import (
    poa_instance,
    poa_smn_maxmin,
    poa_smn_nbs,
    sdf_instance,
    sdf_lemma_check,
    sweep_family,
    topo_both_forms,
    topo_expansion_check,
    topo_instance,
)
from .pareto import (
    eps_approx_construct,
    is_pareto_optimal,
    is_strictly_dominated,
    pareto_filter,
    verify_eps_approx,
)
from .policies import (
    SMN_CLOSED_FORMS,
    apply_policy,
    check_f_increasing,
    find_cross_index_violation,
    index_opt,
    max_min_fair,
    policy_catalog,
    smn_closed_form,
)
from .utility_model import (
    FiniteUtilitySet,
    HalfspaceSet,
    Metric,
    SmnFamily,
    discretize,
    dominates,
    hausdorff,
    smn_halfspaces,
    strictly_dominated_by_all_coords,
)

CROSS_INDEXES = {"arithmetic": ARITHMETIC, "geometric": GEOMETRIC, "min": MIN, "max": MAX, "harmonic": HARMONIC}


def random_points(rng: np.random.Generator, m: int, n: int, lo: float = 0.1, hi: float = 10.0) -> np.ndarray:
    return rng.uniform(lo, hi, size=(m, n))


def random_set(rng: np.random.Generator, n_max: int = 3, m_max: int = 20, *, ties: bool = False) -> FiniteUtilitySet:
    """Random strictly positive set; ``ties`` draws small integers so dominance ties happen."""
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    if ties:
        return FiniteUtilitySet(rng.integers(1, 5, size=(m, n)).astype(float))
    return FiniteUtilitySet(random_points(rng, m, n))


@dataclass(frozen=True)
class Property:
    name: str
    claim: str
    check: Callable[[np.random.Generator], tuple[bool, str]]


# utility_model ---------------------------------------------------------------

def _hausdorff_metric(rng):
    for _ in range(200):
        n = int(rng.integers(1, 4))
        A, B, C = (rng.uniform(0, 5, size=(int(rng.integers(1, 21)), n)) for _ in range(3))
        for metric in Metric:
            ab, ba = hausdorff(A, B, metric), hausdorff(B, A, metric)
            if ab != ba or hausdorff(A, A, metric) != 0:
                return False, "symmetry or identity failed"
            if hausdorff(A, C, metric) > ab + hausdorff(B, C, metric) + 1e-12:
                return False, "triangle inequality failed"
            if ab == 0 and not FiniteUtilitySet(A).same_points(FiniteUtilitySet(B)):
                return False, "zero distance between distinct sets"
    return True, "200 triples x 3 metrics"


def _partial_order(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        u, v, w = (rng.integers(0, 3, size=n).astype(float) for _ in range(3))
        if not dominates(u, u):
            return False, f"reflexivity failed at {u}"
        if dominates(u, v) and dominates(v, u) and not np.array_equal(u, v):
            return False, f"antisymmetry failed at {u}, {v}"
        if dominates(u, v) and dominates(v, w) and not dominates(u, w):
            return False, f"transitivity failed at {u}, {v}, {w}"
        if strictly_dominated_by_all_coords(u, v) and not (dominates(u, v) and not dominates(v, u)):
            return False, f"strict order inconsistent at {u}, {v}"
    return True, "1000 integer triples"


def _discretize_inside(rng):
    for _ in range(30):
        n = int(rng.integers(1, 4))
        k = int(rng.integers(1, 4))
        cons = tuple((tuple(rng.uniform(0.1, 2.0, size=n)), float(rng.uniform(0.5, 3.0))) for _ in range(k))
        H = HalfspaceSet(n, cons)
        r = int(rng.integers(2, 12))
        pts = discretize(H, r).points
        if np.any(pts @ H.A.T > H.b + 1e-9) or np.any(pts < 0):
            return False, f"grid point outside {cons}"
        lo, hi = H.bounding_box
        diag = float(np.max((hi - lo) / (r - 1)))
        if hausdorff(pts, discretize(H, 2 * r).points, Metric.L_INFINITY) > diag + 1e-9:
            return False, "refinement moved the set by more than one grid cell"
    return True, "30 random polytopes"


# indexes ---------------------------------------------------------------------

def _catalog_indexes(n):
    return [ARITHMETIC, MIN, MAX, GEOMETRIC, HARMONIC, JAIN, IndexSpec("quasi", 2.0), IndexSpec("quasi", -0.5),
            IndexSpec("owa", weights=tuple(np.linspace(1.0, 0.2, n)))]


def _symmetry(rng):
    for _ in range(300):
        n = int(rng.integers(1, 5))
        u = random_points(rng, 1, n)[0]
        perm = rng.permutation(n)
        for f in _catalog_indexes(n):
            a, b = eval_index(f, u), eval_index(f, u[perm])
            if not math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12):
                return False, f"{f.label} not symmetric at {u}"
    return True, "300 points x 9 indexes"


def _jain_properties(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        u = rng.uniform(0, 10, size=n)
        if not u.any():
            continue
        j = eval_index(JAIN, u)
        if not (1.0 / n - 1e-9 <= j <= 1.0 + 1e-9):
            return False, f"Jain {j} out of [1/n, 1] at {u}"
        c = float(rng.uniform(0.01, 100))
        if abs(eval_index(JAIN, c * u) - j) > 1e-9:
            return False, f"Jain not scale invariant at {u}"
        uf = jain_fair_point(u)
        if abs(np.mean(u / uf) - j) > 1e-9:
            return False, f"fair-point identity fails at {u}"
        equal = np.full(n, u[0])
        if abs(eval_index(JAIN, equal) - 1.0) > 1e-12:
            return False, "equal shares do not give Jain 1"
    return True, "1000 random points"


def _quasi_consistency(rng):
    for _ in range(300):
        n = int(rng.integers(1, 5))
        u = random_points(rng, 1, n)[0]
        if abs(eval_index(IndexSpec("quasi", 1.0), u) - np.sum(u) / n) > 1e-9:
            return False, "delta=1 is not the arithmetic mean"
        if abs(eval_index(IndexSpec("quasi", -1.0), u) - n * eval_index(HARMONIC, u)) > 1e-9:
            return False, "delta=-1 is not n times the harmonic index"
        gm = float(np.prod(u) ** (1.0 / n))
        spread = float(np.var(np.log(u)))
        for d in (1e-7, -1e-7):
            if abs(eval_index(IndexSpec("quasi", d), u) - gm) > 1e-6 * max(1.0, gm):
                return False, f"delta={d} far from the geometric mean"
        # at |delta| = 1e-4 the gap is first order: about gm * delta * var(log u) / 2
        for d in (1e-4, -1e-4):
            if abs(eval_index(IndexSpec("quasi", d), u) - gm) > gm * abs(d) * spread + 1e-12:
                return False, f"delta={d} outside the first-order band"
        if eval_index(IndexSpec("quasi", math.inf), u) != u.max():
            return False, "delta=+inf is not max"
        if eval_index(IndexSpec("quasi", -math.inf), u) != u.min():
            return False, "delta=-inf is not min"
    return True, "300 random points"


def _monotonicity_table(rng):
    seed = int(rng.integers(0, 2**31))
    for kind, expected in EXPECTED_MONOTONICITY.items():
        v = classify_monotonicity(IndexSpec(kind), 2, 10000, seed)
        if v.verdict is not expected:
            return False, f"{kind}: search says {v.verdict.value}, table says {expected.value}"
        if v.witness is not None:
            u, w = (np.array(x) for x in v.witness)
            fu, fw = eval_index(IndexSpec(kind), u), eval_index(IndexSpec(kind), w)
            if not np.all(u <= w) or (expected is Monotonicity.NON_MONOTONE and not fu > fw):
                return False, f"{kind}: witness does not show the violation"
    return True, f"{len(EXPECTED_MONOTONICITY)} indexes, 10000 trials"


# pareto ----------------------------------------------------------------------

def _front_properties(rng):
    for _ in range(300):
        U = random_set(rng, ties=bool(rng.integers(0, 2)))
        front = pareto_filter(U).points
        if not pareto_filter(front).points.same_points(front):
            return False, "front is not idempotent"
        F = front.points
        for u in U.points:
            if not np.any(np.all(F >= u, axis=1)):
                return False, f"{u} not covered by the front"
        for a, b in itertools.permutations(F, 2):
            if np.all(a <= b):
                return False, "front contains a dominated point"
        chain = np.outer(np.sort(rng.uniform(0.1, 5, size=6)), np.ones(U.dim))
        if not np.array_equal(pareto_filter(chain).points.points, chain[-1:]):
            return False, "chain front is not its maximum"
    return True, "300 random sets"


def _eps_construct(rng):
    for _ in range(100):
        U = random_set(rng, m_max=200)
        for eps in (0.1, 0.25, 1.0):
            S = eps_approx_construct(U, eps)
            ok, witness = verify_eps_approx(S, U, eps)
            if not ok:
                return False, f"eps={eps}: {witness} uncovered"
            if len(S) > len(pareto_filter(U)):
                return False, "approximation larger than the front"
            if not verify_eps_approx(S, U, eps * 1.5)[0]:
                return False, "coverage not monotone in eps"
    return True, "100 sets x 3 eps"


def _argmax_on_front(rng):
    for _ in range(300):
        U = random_set(rng, ties=bool(rng.integers(0, 2)))
        for f in (ARITHMETIC, GEOMETRIC):
            if not is_pareto_optimal(apply_policy(index_opt(f), U), U):
                return False, f"{f.label} optimiser off the front"
    return True, "300 random sets"


# policies --------------------------------------------------------------------

def _policy_membership(rng):
    for _ in range(100):
        U = random_set(rng, n_max=2)
        for p in policy_catalog(U.dim) if U.dim == 2 else [index_opt(ARITHMETIC), max_min_fair()]:
            if not U.contains(apply_policy(p, U), tol=0.0):
                return False, f"{p.label} returned a point outside U"
    return True, "100 random sets x catalog"


def _jain_contrapositive(rng):
    U = FiniteUtilitySet([[1.0, 1.0], [2.0, 1.0]])
    a = apply_policy(index_opt(JAIN), U)
    return (not is_pareto_optimal(a, U)), f"Jain picks {a.tolist()}"


def _cross_index(rng):
    seed = int(rng.integers(0, 2**31))
    for (fn, f), (gn, g) in itertools.permutations(CROSS_INDEXES.items(), 2):
        found = find_cross_index_violation(f, g, 2, 10000, seed)
        if found is None:
            return False, f"no disagreement found for f={fn}, g={gn}"
        if check_f_increasing(index_opt(g), f, found.chain) is None:
            return False, f"chain for f={fn}, g={gn} does not violate f-increasing"
    return True, "20 ordered pairs"


def _f_optimizing_is_f_increasing(rng):
    for _ in range(100):
        U = random_set(rng, n_max=2, m_max=10)
        P = U.points
        chain = [FiniteUtilitySet(P[: k + 1]) for k in range(len(P))]
        for f in (ARITHMETIC, GEOMETRIC, MIN, JAIN):
            if check_f_increasing(index_opt(f), f, chain) is not None:
                return False, f"{f.label} optimiser not {f.label}-increasing"
    return True, "100 random chains"


def _convex_nonmonotone(rng):
    r = demos.demo_convex_nonmonotone()
    return r.passed, f"{len(policy_catalog(2))} policies"


def _smn_closed_forms(rng):
    for M, N in ((2, 3), (10, 3), (5, 2)):
        F = SmnFamily(M, N)
        H = smn_halfspaces(F)
        grid = discretize(H, 50)
        for which in SMN_CLOSED_FORMS:
            u = smn_closed_form(which, F)
            if abs(H.slack(u)[0]) > 1e-12:
                return False, f"{which} at M={M},N={N} not on the boundary"
            if not is_pareto_optimal(u, grid.union([u])):
                return False, f"{which} at M={M},N={N} not Pareto-optimal on the grid"
    return True, "3 families x 3 closed forms"


# inefficiency ----------------------------------------------------------------

def _sdf_topo_equivalences(rng):
    for _ in range(1000):
        U = random_set(rng, m_max=50, ties=bool(rng.integers(0, 2)))
        beta = U.points[int(rng.integers(len(U)))]
        if (sdf_instance(beta, U) > 1) != is_strictly_dominated(beta, U):
            return False, "SDF > 1 disagrees with strict domination"
        t_log, t_ratio, _ = topo_both_forms(beta, U)
        if abs(t_log - t_ratio) > 1e-9 * t_log:
            return False, "log-distance and ratio forms disagree"
        if (t_log == 1.0) != is_pareto_optimal(beta, U):
            return False, "topo == 1 disagrees with Pareto optimality"
        eps = float(rng.uniform(0, 1.5))
        left, right = sdf_lemma_check(beta if rng.random() < 0.5 else rng.uniform(0.1, 10, U.dim), U, eps)
        if left != right:
            return False, "SDF lemma sides disagree"
        if (topo_instance(beta, U) <= math.exp(eps)) != topo_expansion_check(beta, U, eps):
            return False, "topo threshold disagrees with the expansion test"
    return True, "1000 random (beta, U, eps)"


def _poa_properties(rng):
    for _ in range(300):
        U = random_set(rng)
        beta = U.points[int(rng.integers(len(U)))]
        for f in (ARITHMETIC, GEOMETRIC, MIN):
            opt = apply_policy(index_opt(f), U)
            direct = eval_index(f, opt) / eval_index(f, beta)
            if abs(poa_instance(f, beta, U) - direct) > 1e-9 * direct:
                return False, "the two ratio forms disagree"
            if poa_instance(f, opt, U) != 1.0:
                return False, "optimiser has ratio other than 1"
    return True, "300 random sets"


def _sweep_vs_grid(rng):
    N, r = 3, 40
    for M in (2.0, 10.0, 100.0):
        F = SmnFamily(M, N)
        closed = sweep_family("product", "poa-sum", [M], N)[0].value
        if abs(closed - poa_smn_nbs(F)) > 1e-12:
            return False, "closed-form sweep differs from MN/(M+N-1)"
        if abs(sweep_family("min", "poa-sum", [M], N)[0].value - poa_smn_maxmin(F)) > 1e-9 * M:
            return False, "max-min sweep differs from (M(N-1)+1)/N"
        gridded = sweep_family(index_opt(GEOMETRIC), "poa-sum", [M], N, resolution=r)[0].value
        step = max(F.M, 1.0) / (r - 1)
        if abs(gridded - closed) > N * step:
            return False, f"grid sweep {gridded} vs closed form {closed} at M={M}"
    return True, "M in {2, 10, 100}"


# demos -----------------------------------------------------------------------

def _demos(rng):
    for name, fn in demos.GALLERY_DEMOS.items():
        if not fn().passed:
            return False, f"demo {name} failed"
    for name, fn in demos.CONTROL_DEMOS.items():
        if fn().passed:
            return False, f"control {name} unexpectedly exhibited the phenomenon"
    return True, f"{len(demos.GALLERY_DEMOS)} demos, {len(demos.CONTROL_DEMOS)} controls"


def _demo_csv_roundtrip(rng):
    for fn in demos.GALLERY_DEMOS.values():
        for t in fn().artifacts.values():
            back = demos.Table.from_csv(t.to_csv())
            if back.columns != t.columns or np.max(np.abs(back.rows - np.atleast_2d(t.rows)), initial=0) > 1e-12:
                return False, "artifact CSV round-trip lost precision"
    return True, "all gallery demo artifacts"


PROPERTIES: list[Property] = [
    Property("hausdorff_is_metric", "Hausdorff distance is a metric on finite sets", _hausdorff_metric),
    Property("dominance_partial_order", "componentwise order is a partial order", _partial_order),
    Property("discretize_inside_and_converges", "grids stay inside the polytope and refine", _discretize_inside),
    Property("index_symmetry", "catalog indexes are permutation invariant", _symmetry),
    Property("jain_bounds_scale_fairpoint", "Jain in [1/n, 1], scale invariant, mean of u_i/u_f", _jain_properties),
    Property("quasi_arithmetic_special_cases", "delta = 1, -1, 0, +-inf recover the classical means", _quasi_consistency),
    Property("monotonicity_table", "Jain non-monotone; min/max not strictly monotone", _monotonicity_table),
    Property("front_structure", "front is idempotent, covers U, is an antichain", _front_properties),
    Property("eps_approximation", "log-grid construction is an eps-approximation", _eps_construct),
    Property("strict_index_optimum_is_pareto", "strictly monotone index => Pareto-optimal optimiser", _argmax_on_front),
    Property("policy_membership", "alpha(U) belongs to U", _policy_membership),
    Property("jain_optimum_not_pareto", "Pareto-optimal f-optimiser => f monotone (contrapositive)", _jain_contrapositive),
    Property("cross_index_non_increasing", "g-optimiser is f-increasing iff f-optimising", _cross_index),
    Property("f_optimizing_is_f_increasing", "every f-optimising policy is f-increasing", _f_optimizing_is_f_increasing),
    Property("convex_policies_not_monotone", "even convex policies cannot be monotone", _convex_nonmonotone),
    Property("smn_closed_forms", "closed-form optima of S_MN are tight and Pareto-optimal", _smn_closed_forms),
    Property("sdf_topo_equivalences", "SDF lemma and log-space expansion lemma", _sdf_topo_equivalences),
    Property("poa_forms", "index ratio: two displayed forms agree, optimiser gives 1", _poa_properties),
    Property("smn_sweeps", "price of anarchy of NBS tends to N; max-min grows like M", _sweep_vs_grid),
    Property("demos", "counterexample gallery passes; controls do not", _demos),
    Property("demo_csv_roundtrip", "demo tables survive CSV round-trip", _demo_csv_roundtrip),
]


@dataclass(frozen=True)
class PropertyResult:
    name: str
    claim: str
    passed: bool
    detail: str


def run_suite(seed: int = 0, only: list[str] | None = None) -> list[PropertyResult]:
    unknown = set(only or ()) - {p.name for p in PROPERTIES}
    if unknown:
        raise ValueError(f"unknown property name(s): {', '.join(sorted(unknown))}")
    results = []
    for i, prop in enumerate(PROPERTIES):
        if only and prop.name not in only:
            continue
        rng = np.random.default_rng([seed, i])
        try:
            ok, detail = prop.check(rng)
        except Exception as exc:  # a crash is a failed property, reported with its cause
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(PropertyResult(prop.name, prop.claim, bool(ok), detail))
    return results


__all__ = ["Property", "PROPERTIES", "PropertyResult", "run_suite", "random_set", "random_points"]
