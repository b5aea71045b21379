"""
Indexes and the Jain fairness score
===================================

An index collapses a utility vector into one number.  Some are
monotone (more for anyone never lowers the score), Jain is not.
"""
import numpy as np

from paretogauge import IndexSpec, eval_index, jain_fair_point
from paretogauge.indexes import EXPECTED_MONOTONICITY, classify_monotonicity, eval_index_many

###############################################################################
# Evaluate a few indexes on the same points
# ------------------------------------------

points = np.array([[1.0, 1.0], [2.0, 1.0], [4.0, 0.25]])
for name in ("sum", "product", "min", "harmonic", "jain"):
    f = IndexSpec(name)
    print(f"{f.label:>10}: {eval_index_many(f, points).round(4).tolist()}")

# quasi-arithmetic means interpolate between min (delta -> -inf) and max
for delta in (-50, -1, 0, 1, 50):
    print(f"quasi({delta:>3}) at (1, 4): {eval_index(IndexSpec('quasi', delta), (1, 4)):.4f}")

###############################################################################
# Jain through its fair share
# ---------------------------
# The mean of u_i / u_f, where u_f = sum(u^2) / sum(u), reproduces Jain.

u = np.array([3.0, 1.0, 2.0])
uf = jain_fair_point(u)
print("fair share", round(uf, 4), "->", np.mean(u / uf), "==", eval_index(IndexSpec("jain"), u))

###############################################################################
# Randomized monotonicity classification
# --------------------------------------

for kind, expected in EXPECTED_MONOTONICITY.items():
    verdict = classify_monotonicity(IndexSpec(kind), n=2, trials=5000, seed=1)
    print(f"{kind:>10}: {verdict.verdict.value:<18} witness={verdict.witness}")
