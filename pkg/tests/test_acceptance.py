"""The twelve acceptance criteria, each at its stated tolerance.

Every test prints one ``criterion N: PASS|FAIL`` line; the lines are also
collected into the terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for just the summary.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

import conftest
from oracles import front_bf
from paretogauge.demos import (
    crossing_point,
    demo_braess_jain,
    demo_convex_nonmonotone,
    demo_jain_nonpareto,
    demo_pareto_policy_jump,
    demo_sum_discontinuity,
)
from paretogauge.indexes import ARITHMETIC, GEOMETRIC, HARMONIC, JAIN, MAX, MIN, eval_index_many, jain_fair_point
from paretogauge.inefficiency import (
    poa_instance,
    poa_smn_maxmin,
    sdf_instance,
    sdf_lemma_check,
    sweep_family,
    topo_both_forms,
    topo_expansion_check,
    topo_instance,
)
from paretogauge.pareto import eps_approx_construct, is_pareto_optimal, pareto_filter, verify_eps_approx
from paretogauge.policies import (
    TieBreak,
    apply_policy,
    braess_detect,
    check_f_increasing,
    find_cross_index_violation,
    index_opt,
    smn_closed_form,
)
from paretogauge.utility_model import SmnFamily, discretize, smn_halfspaces

SEED = 20240


def report(n: int, ok: bool, detail: str = "") -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line


def positive_set(rng, n_max=3, m_max=50, lo=0.05, hi=10.0):
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    if rng.random() < 0.3:  # coarse lattice to force ties and duplicates
        return rng.integers(1, 5, size=(m, n)).astype(float)
    return rng.uniform(lo, hi, size=(m, n))


def test_criterion_01_smn_closed_forms():
    ok, worst = True, 0.0
    for M, N in [(2, 3), (10, 3), (5, 2)]:
        F = SmnFamily(M, N)
        expected = {
            "sum": np.r_[M, np.zeros(N - 1)],
            "min": np.full(N, 1 / (N - 1 + 1 / M)),
            "product": np.r_[M / N, np.full(N - 1, 1 / N)],
        }
        grid = discretize(smn_halfspaces(F), 50)
        for which, want in expected.items():
            got = smn_closed_form(which, F)
            err = float(np.max(np.abs(got - want)))
            slack = abs(float(smn_halfspaces(F).slack(got)[0]))
            worst = max(worst, err, slack)
            ok &= err <= 1e-12 and slack <= 1e-12 and is_pareto_optimal(got, grid.union([got]))
    cli = subprocess.run(
        [sys.executable, "-m", "paretogauge", "allocate", "--smn", "M=2,N=3", "--policy", "product"],
        capture_output=True,
        text=True,
    )
    ok &= cli.stdout.strip() == '{"point": [0.6666666667, 0.3333333333, 0.3333333333]}'
    report(1, ok, f"max deviation {worst:.1e}")


def test_criterion_02_poa_limit():
    Ms = [2, 10, 100, 1000, 10000]
    vals = [r.value for r in sweep_family("product", "poa-sum", Ms, 3)]
    exact = [M * 3 / (M + 2) for M in Ms]
    ok = np.allclose(vals, exact, rtol=1e-12, atol=0)
    ok &= all(a < b for a, b in zip(vals, vals[1:])) and abs(vals[-1] - 3) <= 1e-3
    gap = 0.0
    for M, v in zip(Ms, vals):
        grid = discretize(smn_halfspaces(SmnFamily(M, 3)), 100)
        g = poa_instance(ARITHMETIC, apply_policy(index_opt(GEOMETRIC), grid), grid)
        gap = max(gap, abs(g - v))
    ok &= gap <= 0.05
    report(2, bool(ok), f"last {vals[-1]:.6f}, grid gap {gap:.2e}")


def test_criterion_03_maxmin_growth():
    N = 3
    vals = [poa_smn_maxmin(SmnFamily(M, N)) for M in (10, 100, 1000)]
    swept = [r.value for r in sweep_family("min", "poa-sum", [10, 100, 1000], N)]
    ok = vals == [7, 67, 667] and np.allclose(swept, vals, rtol=1e-12, atol=0)
    ok &= abs(vals[-1] / 1000 - (N - 1) / N) <= 0.01
    report(3, bool(ok), f"values {vals}")


def test_criterion_04_sdf_lemma():
    rng = np.random.default_rng([SEED, 4])
    bad = 0
    for _ in range(1000):
        U = positive_set(rng)
        if rng.random() < 0.5:
            beta = U[rng.integers(len(U))]
        else:
            beta = rng.uniform(0.05, 10, U.shape[1])
        r = rng.random()
        if r < 0.2:
            eps = max(0.0, math.log(sdf_instance(beta, U)))  # on the boundary
        elif r < 0.3:
            eps = 0.0
        else:
            eps = float(rng.uniform(0, 2))
        left, right = sdf_lemma_check(beta, U, eps)
        bad += left != right
    report(4, bad == 0, f"{bad} disagreements in 1000")


def test_criterion_05_topological_measure():
    rng = np.random.default_rng([SEED, 5])
    worst, bad_b, bad_c = 0.0, 0, 0
    for _ in range(1000):
        U = positive_set(rng)
        beta = U[rng.integers(len(U))]
        topo, ratio, _ = topo_both_forms(beta, U)
        worst = max(worst, abs(topo - ratio))
        eps = math.log(topo) if rng.random() < 0.3 else float(rng.uniform(0, 2))
        bad_b += topo_expansion_check(beta, U, eps) != (topo_instance(beta, U) <= math.exp(eps))
        on_front = tuple(beta.tolist()) in front_bf(U.tolist())
        bad_c += (topo == 1) != on_front
    ok = worst <= 1e-9 and bad_b == 0 and bad_c == 0
    report(5, ok, f"(a) max gap {worst:.1e}, (b) {bad_b} mismatches, (c) {bad_c} mismatches")


def test_criterion_06_monotone_index_argmax_is_pareto():
    rng = np.random.default_rng([SEED, 6])
    bad = 0
    for _ in range(1000):
        U = positive_set(rng)
        for f in (ARITHMETIC, GEOMETRIC):
            for tb in TieBreak:
                bad += not is_pareto_optimal(apply_policy(index_opt(f, tb), U), U)
    r = demo_jain_nonpareto()
    vals = r.artifacts["values"].rows[:, 2].tolist()
    ok = bad == 0 and r.passed and np.allclose(vals, [1.0, 0.9], atol=1e-12)
    report(6, bool(ok), f"{bad} non-Pareto argmaxes; Jain values {vals}")


def test_criterion_07_cross_index_violations():
    catalog = [ARITHMETIC, GEOMETRIC, MIN, MAX, HARMONIC]
    missing = []
    for f in catalog:
        for g in catalog:
            if f == g:
                continue
            found = find_cross_index_violation(f, g, n=2, trials=10000, seed=SEED)
            if found is None or check_f_increasing(index_opt(g), f, found.chain) is None:
                missing.append(f"{f.label}/{g.label}")
    report(7, not missing, f"{20 - len(missing)}/20 pairs" + (f", missing {missing}" if missing else ""))


def test_criterion_08_convex_nonmonotone():
    r = demo_convex_nonmonotone()
    report(8, r.passed, f"{len(r.artifacts['choices'].rows)} catalog policies")


def test_criterion_09_braess():
    ok = demo_braess_jain(TieBreak.LEX_MIN).passed and not demo_braess_jain(TieBreak.LEX_MAX).passed
    rng = np.random.default_rng([SEED, 9])
    hits = 0
    for _ in range(500):
        U2 = positive_set(rng, m_max=30)
        if len(U2) < 2:
            U2 = np.vstack([U2, U2 * 0.5])
        U1 = U2[np.sort(rng.choice(len(U2), size=int(rng.integers(1, len(U2))), replace=False))]
        tb = TieBreak.LEX_MIN if rng.random() < 0.5 else TieBreak.LEX_MAX
        hits += braess_detect(index_opt(ARITHMETIC, tb), U1, U2) is not None
    report(9, bool(ok and hits == 0), f"{hits} Arithmetic witnesses in 500")


def test_criterion_10_eps_approximation():
    rng = np.random.default_rng([SEED, 10])
    bad = 0
    for _ in range(200):
        U = positive_set(rng, m_max=200)
        for eps in (0.1, 0.25, 1.0):
            bad += not verify_eps_approx(eps_approx_construct(U, eps), U, eps)[0]
        bad += not eps_approx_construct(U, 0.0).same_points(pareto_filter(U).points)
    report(10, bad == 0, f"{bad} failures")


def test_criterion_11_discontinuity():
    r = demo_sum_discontinuity(0.01)
    _, dist, jump = r.artifacts["summary"].rows[0]
    ok = r.passed and jump >= 0.9 and dist <= 0.03
    step = 0.8 / 100
    crossings = []
    for f, target in ((GEOMETRIC, 0.75), (ARITHMETIC, 1.0)):
        run = demo_pareto_policy_jump(index_opt(f), steps=100)
        t = crossing_point(run) if run.passed else math.nan
        crossings.append(t)
        ok &= run.passed and abs(t - target) <= step
    report(11, bool(ok), f"jump {jump:.3f}, distance {dist:.3f}, crossings {crossings}")


def test_criterion_12_jain_sanity():
    rng = np.random.default_rng([SEED, 12])
    worst = 0.0
    ok = True
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        u = rng.uniform(0, 10, n)
        if rng.random() < 0.1:
            u[rng.integers(n)] = 0.0
        j = eval_index_many(JAIN, u[None, :])[0]
        ok &= 1 / n - 1e-9 <= j <= 1 + 1e-9
        k = float(rng.uniform(0.01, 100))
        worst = max(worst, abs(eval_index_many(JAIN, (k * u)[None, :])[0] - j))
        if u.sum() > 0:
            uf = jain_fair_point(u)
            worst = max(worst, abs(np.mean(u / uf) - j))
    ok &= worst <= 1e-9
    report(12, bool(ok), f"max deviation {worst:.1e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
