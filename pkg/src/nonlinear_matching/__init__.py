"""Nonlinear bipartite matching.

Find a perfect matching of K_{n,n} optimizing f(w^1 x, ..., w^d x) for d
integer weight matrices and an objective f seen only through comparisons.
All arithmetic is exact.
"""

from .convex import ConvexSolveReport, maximize_convex, maximize_convex_variant
from .core import (
    MAX,
    MIN,
    Instance,
    InstanceError,
    Matching,
    Objective,
    OracleCounter,
    ScaleError,
    brute_force_projections,
    brute_force_solve,
    compare,
    linear,
    lp_norm,
    make_instance,
    normalize_nonnegative,
    project,
    quadratic_distance,
    table,
)
from .fiber import (
    FiberEmpty,
    FiberVertex,
    NonIntegralVertex,
    enumerate_fiber_vertices,
    fiber_permutation,
    fiber_vertex,
)
from .generators import (
    Decision,
    example_one,
    specified_decision,
    subset_sum_instance,
    three_dm_instance,
)
from .norms import NormSolveReport, max_norm, min_norm, norm_compare
from .polytope import (
    GridBounds,
    brute_force_edge_directions,
    edge_direction_count,
    feasible_grid_points,
    grid_bounds,
    multiobjective_polytope,
    polytope_vertices,
)
from .randomized import (
    ASubstitution,
    SupportSet,
    det_at,
    optimum_value_estimate,
    randomized_solve,
    restrict,
    support,
)

__version__ = "0.1.0"
