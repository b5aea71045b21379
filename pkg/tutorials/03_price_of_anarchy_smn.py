"""
Sum-inefficiency on the S_{M,N} family
======================================

One user is M times more efficient than the N - 1 others:
u_1 / M + u_2 + ... + u_N <= 1.  The sum is maximised by giving
everything to user 1, max-min fairness equalises, and the product
(Nash bargaining) sits in between.
"""
from paretogauge import SmnFamily, index_opt, max_min_fair, smn_closed_form
from paretogauge.indexes import GEOMETRIC
from paretogauge.inefficiency import poa_smn_maxmin, poa_smn_nbs, sweep_family, sweep_to_csv

F = SmnFamily(M=2, N=3)
for which in ("sum", "min", "product"):
    print(f"{which:>8}: {smn_closed_form(which, F).round(4).tolist()}")

###############################################################################
# The product optimiser loses at most a factor N in total utility
# ---------------------------------------------------------------

print(sweep_to_csv(sweep_family("product", "poa-sum", [2, 10, 100, 1000, 10000], 3)))

###############################################################################
# Max-min fairness loses a factor that grows linearly in M
# ---------------------------------------------------------

for M in (10, 100, 1000):
    print(M, poa_smn_nbs(SmnFamily(M, 3)), poa_smn_maxmin(SmnFamily(M, 3)))

###############################################################################
# The same numbers from a policy run on a grid
# --------------------------------------------

for policy in (index_opt(GEOMETRIC), max_min_fair()):
    rows = sweep_family(policy, "poa-sum", [2, 5, 20], 3, resolution=41)
    print(policy.label, [round(r.value, 4) for r in rows])
