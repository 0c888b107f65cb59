"""Convex maximization through the vertices of the projected polytope.

Both solvers assume the comparison oracle comes from a convex function.
That is a caller contract and is never checked; with any other oracle the
result is a valid matching without an optimality guarantee.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .core import (
    Instance,
    Matching,
    Objective,
    OracleCounter,
    best_point,
    prefer,
    project,
)
from .fiber import fiber_permutation, fiber_vertex
from .polytope import grid_bounds, polytope_vertices, scan_feasible


class SearchExhausted(RuntimeError):
    """No grid point produced a permutation matrix; cannot happen for valid input."""


@dataclass
class ConvexSolveReport:
    matching: Matching
    projection: tuple
    fibers_tested: int
    oracle_queries: int
    method: str
    tested: tuple = ()


def maximize_convex(instance: Instance, objective: Objective,
                    counter: OracleCounter | None = None) -> ConvexSolveReport:
    """Build every vertex of the projected polytope and lift the oracle-best one."""
    counter = counter or OracleCounter()
    bounds = grid_bounds(instance)
    feasible, lps = scan_feasible(instance, bounds)
    vertices = polytope_vertices(instance, feasible)
    y = best_point(objective, vertices, counter)
    matching = fiber_permutation(instance, y)
    return ConvexSolveReport(
        matching=matching,
        projection=project(instance, matching),
        fibers_tested=lps + 1,  # the grid scan plus the final lift
        oracle_queries=counter.queries,
        method="full",
    )


def maximize_convex_variant(instance: Instance, objective: Objective,
                            counter: OracleCounter | None = None) -> ConvexSolveReport:
    """Scan the grid from best to worst and stop at the first integral fiber vertex.

    Grid points are sorted by nonincreasing objective, ties lexicographic.
    A fiber whose LP vertex is fractional is skipped even if it also holds
    permutation matrices.
    """
    counter = counter or OracleCounter()
    bounds = grid_bounds(instance)

    def order(y, z):
        c = prefer(objective, y, z, counter)
        if c:
            return -c
        return (y > z) - (y < z)

    ranked = sorted(bounds.points(), key=functools.cmp_to_key(order))
    tested = []
    for y in ranked:
        tested.append(y)
        v = fiber_vertex(instance, y)
        if v is not None and v.is_integral:
            matching = v.to_matching()
            return ConvexSolveReport(
                matching=matching,
                projection=project(instance, matching),
                fibers_tested=len(tested),
                oracle_queries=counter.queries,
                method="variant",
                tested=tuple(tested),
            )
    raise SearchExhausted("no grid point yielded a permutation matrix")

