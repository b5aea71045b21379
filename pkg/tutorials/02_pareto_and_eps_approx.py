"""
Pareto fronts and eps-approximations
====================================

The front keeps the points nobody can improve on.  An
eps-approximation keeps far fewer points while every original point
stays within a factor (1 + eps) of one of them.
"""
import numpy as np

from paretogauge import FiniteUtilitySet, eps_approx_construct, hausdorff, pareto_filter, verify_eps_approx

rng = np.random.default_rng(0)

###############################################################################
# A noisy quarter circle
# ----------------------

theta = rng.uniform(0, np.pi / 2, 2000)
radius = rng.uniform(0.5, 1.0, 2000)
U = FiniteUtilitySet(np.column_stack([np.cos(theta), np.sin(theta)]) * radius[:, None] + 0.01)
front = pareto_filter(U)
print(f"{len(U)} points, {len(front.points)} on the front")

###############################################################################
# Thinning the front
# ------------------

for eps in (0.01, 0.05, 0.25, 1.0):
    S = eps_approx_construct(U, eps)
    ok, _ = verify_eps_approx(S, U, eps)
    print(f"eps={eps:<5} keeps {len(S):>3} points, verified={ok}, "
          f"distance to front {hausdorff(S, front.points):.3f}")
