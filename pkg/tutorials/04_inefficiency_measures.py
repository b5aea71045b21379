"""
Three ways to score a chosen allocation
=======================================

Given a set U and a chosen point beta in it:

* the index ratio max f(u) / f(beta),
* SDF, the largest factor by which beta can be scaled up while staying
  below some point of U,
* the log-space L_inf distance from beta to the Pareto front, exponentiated.
"""
import math

import numpy as np

from paretogauge import inefficiency_report
from paretogauge.indexes import ARITHMETIC
from paretogauge.inefficiency import sdf_lemma_check, topo_expansion_check

U = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 0.5], [0.5, 2.5]])
for beta in U:
    r = inefficiency_report(beta, U, ARITHMETIC)
    print(f"beta={beta.tolist()}: sum-ratio={r.poa:.3f} sdf={r.sdf:.3f} topo={r.topo:.3f}")

###############################################################################
# SDF and the topological measure as set inclusions
# -------------------------------------------------
# log SDF <= eps exactly when every point of U has some coordinate below
# beta * exp(eps); topo <= exp(eps) exactly when beta sits in the
# multiplicative exp(eps)-blow-up of the front.

beta = U[0]
for eps in (0.5, math.log(2), 1.0):
    print(f"eps={eps:.3f}: lemma sides {sdf_lemma_check(beta, U, eps)}, "
          f"within expansion {topo_expansion_check(beta, U, eps)}")
