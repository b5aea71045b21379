"""Efficiency and fairness measures over utility sets.

Indexes (sum, product, min, Jain, ...), Pareto fronts and
eps-approximations, index-optimising and max-min fair policies, and the
three inefficiency measures: index ratio (price of anarchy), SDF and
log-space distance to the Pareto front.
"""

from .indexes import IndexSpec, eval_index, jain_fair_point, jain_relative
from .inefficiency import (
    inefficiency_report,
    poa_instance,
    sdf_instance,
    sweep_family,
    topo_instance,
)
from .pareto import eps_approx_construct, is_pareto_optimal, pareto_filter, verify_eps_approx
from .policies import PolicySpec, TieBreak, apply_policy, index_opt, max_min_fair, smn_closed_form
from .utility_model import (
    DimensionError,
    DomainError,
    FiniteUtilitySet,
    HalfspaceSet,
    Metric,
    SmnFamily,
    discretize,
    hausdorff,
    smn_halfspaces,
)

__version__ = "0.1.0"
