"""Book crossing numbers of complete graphs at desk scale.

Computes and verifies k-page drawings of K_n (constructions, crossing
counts, simulated annealing), exact maximum edge counts of convex graphs
with bounded local crossings, and exact-rational lower bounds for the
k-page crossing number, with a CLI (``bookx``) over all of it.
"""

from ._kernels import HAVE_NUMBA, USE_NUMBA, backend_name
from .anneal import AnnealResult, Schedule, anneal, improve_from
from .bounds import (
    BoundReport,
    asymptotic_coefficient,
    best_asymptotic_coefficient,
    best_m,
    bound_report,
    counting_bound,
    crossing_lower_bound,
    exact_range_value,
    limit_coefficient_formula,
    piecewise_bound,
    upper_coefficient,
)
from .geometry import (
    CompositionSpec,
    ConvexGraph,
    CrossingGraph,
    complete_convex,
    crossing_count,
    crossing_graph,
    edges_cross,
    fan_skip_graph,
    has_acyclic_crossing_graph,
    local_crossing_number,
    parallel_compose,
    reduced_complete,
)
from .maxedges import (
    EdgeMaxRecord,
    max_edges_composite,
    max_edges_exact,
    max_edges_forest,
    max_edges_formula,
    slope,
    slope_ratio_max,
    upper_envelope,
)
from .pages import (
    BookDrawing,
    ZkParams,
    block_drawing,
    block_term,
    count_monochromatic_crossings,
    matching_class,
    move_boundary_edges,
    zk,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealResult",
    "BookDrawing",
    "BoundReport",
    "CompositionSpec",
    "ConvexGraph",
    "CrossingGraph",
    "EdgeMaxRecord",
    "HAVE_NUMBA",
    "Schedule",
    "USE_NUMBA",
    "ZkParams",
    "anneal",
    "asymptotic_coefficient",
    "backend_name",
    "best_asymptotic_coefficient",
    "best_m",
    "block_drawing",
    "block_term",
    "bound_report",
    "complete_convex",
    "count_monochromatic_crossings",
    "counting_bound",
    "crossing_count",
    "crossing_graph",
    "crossing_lower_bound",
    "edges_cross",
    "exact_range_value",
    "fan_skip_graph",
    "has_acyclic_crossing_graph",
    "improve_from",
    "limit_coefficient_formula",
    "local_crossing_number",
    "matching_class",
    "max_edges_composite",
    "max_edges_exact",
    "max_edges_forest",
    "max_edges_formula",
    "move_boundary_edges",
    "parallel_compose",
    "piecewise_bound",
    "reduced_complete",
    "slope",
    "slope_ratio_max",
    "upper_coefficient",
    "upper_envelope",
    "zk",
]
