"""Walk through the 4 x 4, two-weight worked example.

Builds the grid box, scans it for feasible points, finds the vertices of the
projected polytope, and maximizes f(y) = y1^2 + y2^2 both ways.
"""

from nonlinear_matching import (
    example_one,
    feasible_grid_points,
    fiber_vertex,
    grid_bounds,
    maximize_convex,
    maximize_convex_variant,
    polytope_vertices,
    quadratic_distance,
)

inst = example_one()
box = grid_bounds(inst)
print(f"grid box s={box.s} t={box.t}: {box.size} integer points")

feasible = feasible_grid_points(inst, box)
vertices = polytope_vertices(inst, feasible)
print(f"{len(feasible)} feasible grid points, vertices: {vertices}")

f = quadratic_distance((0, 0))
full = maximize_convex(inst, f)
print(f"full method  -> matching {full.matching.one_based()} projection {full.projection} "
      f"f={f.value(full.projection)}")

var = maximize_convex_variant(inst, f)
print(f"grid variant -> tested {list(var.tested)}, accepted {var.projection}")

print("\nthe point (1, 2) is feasible but interior; its fiber LP returns a fractional vertex:")
print(fiber_vertex(inst, (1, 2)))
