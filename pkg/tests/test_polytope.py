import itertools
import math
import random
from fractions import Fraction

import pytest

from conftest import random_instance
from nonlinear_matching import (
    GridBounds,
    Matching,
    ScaleError,
    brute_force_edge_directions,
    brute_force_projections,
    edge_direction_count,
    feasible_grid_points,
    grid_bounds,
    make_instance,
    multiobjective_polytope,
    polytope_vertices,
)
from nonlinear_matching.polytope import edge_direction_lower_bound, in_convex_hull
from oracles import hull_vertices_2d, in_hull_2d

EX1_VERTICES = {(0, 1), (0, 3), (1, 4), (2, 0), (2, 4), (3, 0), (3, 2)}


def test_grid_bounds_examples(ex1):
    assert grid_bounds(ex1) == GridBounds((0, 0), (3, 4))
    zero = make_instance(3, 2, [[[0] * 3] * 3] * 2)
    assert grid_bounds(zero) == GridBounds((0, 0), (0, 0))
    ident = make_instance(3, 1, [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]])
    assert grid_bounds(ident) == GridBounds((0,), (3,))


def test_grid_bounds_negative():
    inst = make_instance(2, 1, [[[-5, 1], [2, -1]]])
    assert grid_bounds(inst) == GridBounds((-6,), (3,))


def test_box_points_lexicographic(ex1):
    pts = list(grid_bounds(ex1).points())
    assert len(pts) == grid_bounds(ex1).size == 20
    assert pts == sorted(pts)


def test_feasible_points_example(ex1):
    feasible = set(feasible_grid_points(ex1))
    assert (1, 2) in feasible
    assert (3, 4) not in feasible
    assert len(feasible) == 15


def test_vertices_example(ex1):
    vertices = set(polytope_vertices(ex1))
    assert (2, 4) in vertices
    assert (1, 2) not in vertices
    assert vertices == EX1_VERTICES
    poly = multiobjective_polytope(ex1)
    assert set(poly.vertices) == vertices
    assert set(poly.vertices) <= set(poly.feasible)


def test_vertices_zero_weights():
    zero = make_instance(3, 2, [[[0] * 3] * 3] * 2)
    assert polytope_vertices(zero) == [(0, 0)]


def test_in_convex_hull():
    square = [(0, 0), (2, 0), (0, 2), (2, 2)]
    assert in_convex_hull((1, 1), square)
    assert in_convex_hull((2, 0), square)
    assert not in_convex_hull((3, 1), square)
    assert not in_convex_hull((1, 1), [])


def test_polytope_chain_and_hulls():
    rng = random.Random(31)
    for _ in range(20):
        n = rng.randint(1, 5)
        inst = random_instance(rng, n, 2, 0, 2)
        box = grid_bounds(inst)
        feasible = set(feasible_grid_points(inst, box))
        vertices = set(polytope_vertices(inst))
        Y = brute_force_projections(inst)
        assert vertices <= feasible <= set(box.points())
        assert Y <= feasible
        # the hull of Y and the hull of the feasible grid points coincide
        assert all(in_hull_2d(y, Y) for y in feasible)
        assert vertices == hull_vertices_2d(Y)


def test_polytope_three_dimensions():
    rng = random.Random(32)
    for _ in range(5):
        inst = random_instance(rng, 3, 3, 0, 1)
        vertices = set(polytope_vertices(inst))
        Y = brute_force_projections(inst)
        assert vertices <= Y
        assert all(in_convex_hull(y, sorted(vertices)) for y in Y)
        for v in vertices:
            assert not in_convex_hull(v, sorted(Y - {v}))


@pytest.mark.parametrize("n,count", [(2, 1), (3, 15), (4, 204)])
def test_edge_direction_count(n, count):
    assert edge_direction_count(n) == count


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8])
def test_edge_direction_lower_bound(n):
    assert edge_direction_count(n) >= edge_direction_lower_bound(n)
    assert edge_direction_lower_bound(n) == Fraction(math.comb(math.factorial(n), 2), n)


def test_edge_direction_count_rejects_small():
    with pytest.raises(ValueError):
        edge_direction_count(1)


@pytest.mark.parametrize("n", [2, 3])
def test_brute_force_edge_directions(n):
    dirs = brute_force_edge_directions(n)
    assert len(dirs) == edge_direction_count(n)
    for x in dirs:
        assert all(sum(row) == 0 for row in x)
        assert all(sum(x[i][j] for i in range(n)) == 0 for j in range(n))
        assert next(v for row in x for v in row if v) == 1
        assert all(v in (-1, 0, 1) for row in x for v in row)


def _single_cycle(sigma, tau):
    # tau o sigma^-1 moves exactly the points of one cycle
    n = len(sigma)
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s] = i
    rho = [tau[inv[j]] for j in range(n)]
    moved = [j for j in range(n) if rho[j] != j]
    if not moved:
        return False
    j, seen = moved[0], 0
    while True:
        j = rho[j]
        seen += 1
        if j == moved[0]:
            return seen == len(moved)


def test_edge_directions_are_differences_of_adjacent_vertices():
    # independent route for n = 3: Birkhoff vertices P, Q are adjacent iff
    # they differ by a single cycle, and the edge direction is P - Q
    n = 3
    perms = list(itertools.permutations(range(n)))
    diffs = set()
    for s, t in itertools.combinations(perms, 2):
        if _single_cycle(s, t):
            P, Q = Matching(s).to_matrix(), Matching(t).to_matrix()
            x = tuple(tuple(a - b for a, b in zip(r, q)) for r, q in zip(P, Q))
            if next(v for row in x for v in row if v) < 0:
                x = tuple(tuple(-v for v in row) for row in x)
            diffs.add(x)
    assert diffs == brute_force_edge_directions(n)


def test_brute_force_edge_directions_cap():
    with pytest.raises(ScaleError):
        brute_force_edge_directions(5)
