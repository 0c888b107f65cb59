"""The projected (multiobjective) polytope and Birkhoff edge directions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Instance, ScaleError
from .simplex import StandardLP, birkhoff_system, solve


@dataclass(frozen=True)
class GridBounds:
    s: tuple
    t: tuple

    def points(self):
        """Integer points of the box in lexicographic order."""
        return itertools.product(*(range(lo, hi + 1) for lo, hi in zip(self.s, self.t)))

    @property
    def size(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in zip(self.s, self.t))

    def __contains__(self, y) -> bool:
        return all(lo <= v <= hi for v, lo, hi in zip(y, self.s, self.t))


@dataclass(frozen=True)
class MultiobjectivePolytope:
    bounds: GridBounds
    feasible: tuple
    vertices: tuple


def _birkhoff_optimum(instance: Instance, k: int, sense: str) -> int:
    n = instance.n
    A, b = birkhoff_system(n)
    c = [instance.weights[k][v // n][v % n] for v in range(n * n)]
    out = solve(StandardLP(A, b, c, sense))
    # Birkhoff integrality makes the optimum an integer
    assert out.value.denominator == 1
    return int(out.value)


def grid_bounds(instance: Instance) -> GridBounds:
    """Tightest box ``[s, t]`` from 2d linear programs over the Birkhoff polytope."""
    s = tuple(_birkhoff_optimum(instance, k, "min") for k in range(instance.d))
    t = tuple(_birkhoff_optimum(instance, k, "max") for k in range(instance.d))
    return GridBounds(s, t)


def scan_feasible(instance: Instance, bounds: GridBounds | None = None) -> tuple[list, int]:
    """Feasible grid points and the number of fiber LPs used to find them.

    Fixing y_2..y_d leaves a segment of feasible y_1 values (the fiber
    polytopes along a line form a convex family), so each grid line costs
    two LPs -- min and max of w^1 x on the partial fiber -- instead of one
    LP per grid point.  The result is exactly the set of box points with a
    nonempty fiber.
    """
    bounds = bounds or grid_bounds(instance)
    n, d = instance.n, instance.d
    A0, b0 = birkhoff_system(n)
    first = [instance.weights[0][v // n][v % n] for v in range(n * n)]
    rest = GridBounds(bounds.s[1:], bounds.t[1:])
    out, lps = [], 0
    for tail in rest.points():
        A = A0 + [[w[v // n][v % n] for v in range(n * n)] for w in instance.weights[1:]]
        b = b0 + list(tail)
        lo = solve(StandardLP(A, b, first, "min"))
        lps += 1
        if not lo.optimal:
            continue
        hi = solve(StandardLP(A, b, first, "max"))
        lps += 1
        start = max(bounds.s[0], math.ceil(lo.value))
        stop = min(bounds.t[0], math.floor(hi.value))
        out.extend((y1,) + tail for y1 in range(start, stop + 1))
    out.sort()
    return out, lps


def feasible_grid_points(instance: Instance, bounds: GridBounds | None = None) -> list:
    """Grid points of the box with a nonempty fiber, in lexicographic order."""
    return scan_feasible(instance, bounds)[0]


def in_convex_hull(y, points) -> bool:
    """Exact LP test of ``y in conv(points)``."""
    points = list(points)
    if not points:
        return False
    d = len(y)
    A = [[p[k] for p in points] for k in range(d)] + [[1] * len(points)]
    b = list(y) + [1]
    return solve(StandardLP(A, b, [0] * len(points))).optimal


def _vertices_of(points: list) -> list:
    """Extreme points of a finite integer point set.

    A point that is the midpoint of two others is never a vertex.  The
    survivors form a set C containing every vertex, and y in C is a vertex
    iff y is not in conv(C minus y); non-vertices are dropped from C as they
    are found, which keeps that property and shrinks later LPs.
    """
    points = sorted(set(tuple(p) for p in points))
    if len(points) <= 1:
        return points
    d = len(points[0])
    present = set(points)
    cands = [y for y in points
             if not any(a != y and tuple(2 * c - e for c, e in zip(y, a)) in present for a in points)]
    keep = set(cands)
    for y in cands:
        others = [p for p in cands if p in keep and p != y]
        # a strict coordinate-wise extreme needs no LP
        if any(all(p[k] != y[k] and (p[k] < y[k]) == below for p in others)
               for k in range(d) for below in (True, False)):
            continue
        if in_convex_hull(y, others):
            keep.discard(y)
    return [y for y in cands if y in keep]


def polytope_vertices(instance: Instance, feasible: list | None = None) -> list:
    """Vertices of the projected polytope, lexicographically sorted.

    A feasible grid point is a vertex iff it is not in the convex hull of
    the other feasible grid points.
    """
    if feasible is None:
        feasible = feasible_grid_points(instance)
    return _vertices_of(feasible)


def multiobjective_polytope(instance: Instance) -> MultiobjectivePolytope:
    bounds = grid_bounds(instance)
    feasible = feasible_grid_points(instance, bounds)
    return MultiobjectivePolytope(bounds, tuple(feasible), tuple(_vertices_of(feasible)))


def edge_direction_count(n: int) -> int:
    """Number of edge directions of the n x n Birkhoff polytope.

    One per circuit of K_{n,n}: half the sum over k = 2..n of
    C(n, k)^2 k! (k-1)!.
    """
    if n < 2:
        raise ValueError(f"edge directions need n >= 2, got {n}")
    total = sum(math.comb(n, k) ** 2 * math.factorial(k) * math.factorial(k - 1)
                for k in range(2, n + 1))
    return total // 2


def edge_direction_lower_bound(n: int) -> Fraction:
    """(1/n) * C(n!, 2)."""
    return Fraction(math.comb(math.factorial(n), 2), n)


BRUTE_FORCE_EDGE_MAX_N = 4


def _normalize_sign(x: tuple) -> tuple:
    first = next(v for row in x for v in row if v)
    if first < 0:
        return tuple(tuple(-v for v in row) for row in x)
    return x


def brute_force_edge_directions(n: int) -> set:
    """Circuit matrices of K_{n,n}, sign-normalized, by walking every even circuit.

    A 2k-circuit visits rows r_1..r_k and columns c_1..c_k; it gets +1 on the
    edges (r_i, c_i) and -1 on (r_{i+1}, c_i).
    """
    if n < 2:
        raise ValueError(f"edge directions need n >= 2, got {n}")
    if n > BRUTE_FORCE_EDGE_MAX_N:
        raise ScaleError(f"circuit enumeration limited to n <= {BRUTE_FORCE_EDGE_MAX_N}")
    found = set()
    for k in range(2, n + 1):
        for rows in itertools.permutations(range(n), k):
            for cols in itertools.permutations(range(n), k):
                x = [[0] * n for _ in range(n)]
                for i in range(k):
                    x[rows[i]][cols[i]] = 1
                    x[rows[(i + 1) % k]][cols[i]] = -1
                found.add(_normalize_sign(tuple(map(tuple, x))))
    return found
