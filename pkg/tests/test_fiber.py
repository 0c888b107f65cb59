import random
from fractions import Fraction

import pytest

from conftest import PRINTED_FIBER_VERTICES, random_instance
from nonlinear_matching import (
    FiberEmpty,
    InstanceError,
    Matching,
    NonIntegralVertex,
    ScaleError,
    brute_force_projections,
    enumerate_fiber_vertices,
    feasible_grid_points,
    fiber_permutation,
    fiber_vertex,
    grid_bounds,
    make_instance,
    polytope_vertices,
    project,
)
from nonlinear_matching.core import project_matrix


def as_fractions(rows):
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def is_bistochastic(x):
    n = len(x)
    return (
        all(v >= 0 for row in x for v in row)
        and all(sum(row) == 1 for row in x)
        and all(sum(x[i][j] for i in range(n)) == 1 for j in range(n))
    )


def test_empty_fiber(ex1):
    assert fiber_vertex(ex1, (3, 4)) is None
    with pytest.raises(FiberEmpty):
        fiber_permutation(ex1, (3, 4))


def test_optimal_vertex_fiber_is_integral(ex1):
    v = fiber_vertex(ex1, (2, 4))
    assert v.is_integral
    assert project(ex1, v.to_matching()) == (2, 4)
    m = fiber_permutation(ex1, (2, 4))
    assert project(ex1, m) == (2, 4)


def test_interior_point_fiber_is_fractional(ex1):
    v = fiber_vertex(ex1, (1, 2))
    assert not v.is_integral
    assert is_bistochastic(v.x)
    assert project_matrix(ex1, v.x) == (1, 2)
    with pytest.raises(NonIntegralVertex):
        fiber_permutation(ex1, (1, 2))


def test_zero_weights_any_matching():
    inst = make_instance(3, 1, [[[0] * 3] * 3])
    assert project(inst, fiber_permutation(inst, (0,))) == (0,)


def test_length_mismatch(ex1):
    with pytest.raises(InstanceError):
        fiber_vertex(ex1, (1,))


def test_fiber_vertex_reprojects_and_matches_membership():
    rng = random.Random(21)
    for _ in range(12):
        n, d = rng.randint(1, 4), rng.randint(1, 2)
        inst = random_instance(rng, n, d, 0, 2)
        box = grid_bounds(inst)
        feasible = set(feasible_grid_points(inst, box))
        Y = brute_force_projections(inst)
        assert Y <= feasible
        for y in box.points():
            v = fiber_vertex(inst, y)
            assert (v is not None) == (y in feasible)
            if v is not None:
                assert is_bistochastic(v.x)
                assert project_matrix(inst, v.x) == y


def test_fiber_permutation_on_every_polytope_vertex():
    rng = random.Random(22)
    for _ in range(15):
        n, d = rng.randint(1, 5), rng.randint(1, 2)
        inst = random_instance(rng, n, d, -1, 2)
        for y in polytope_vertices(inst):
            assert project(inst, fiber_permutation(inst, y)) == y


def test_enumeration_empty_and_integral(ex1):
    assert enumerate_fiber_vertices(ex1, (3, 4)) == set()
    top = enumerate_fiber_vertices(ex1, (2, 4))
    assert top and all(v.is_integral for v in top)
    assert all(project(ex1, v.to_matching()) == (2, 4) for v in top)


def test_enumeration_bounds():
    inst = make_instance(5, 1, [[[0] * 5] * 5])
    with pytest.raises(ScaleError):
        enumerate_fiber_vertices(inst, (0,))


def test_enumeration_contains_lp_vertex():
    rng = random.Random(23)
    for _ in range(10):
        n = rng.randint(2, 3)
        inst = random_instance(rng, n, 1, 0, 3)
        for y in sorted(feasible_grid_points(inst)):
            everything = enumerate_fiber_vertices(inst, y)
            assert fiber_vertex(inst, y) in everything
            assert all(is_bistochastic(v.x) and project_matrix(inst, v.x) == y for v in everything)


def test_birkhoff_vertices_enumerated():
    # with zero weights the fiber is the whole Birkhoff polytope: n! vertices
    inst = make_instance(3, 1, [[[0] * 3] * 3])
    found = enumerate_fiber_vertices(inst, (0,))
    assert {v.to_matching() for v in found} == {Matching(s) for s in
                                               [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]}


def test_interior_fiber_vertices(ex1_fiber_12_vertices, ex1):
    xs = {v.x for v in ex1_fiber_12_vertices}
    for printed in PRINTED_FIBER_VERTICES:
        assert as_fractions(printed) in xs
    for v in ex1_fiber_12_vertices:
        assert not v.is_integral
        assert is_bistochastic(v.x) and project_matrix(ex1, v.x) == (1, 2)
    assert fiber_vertex(ex1, (1, 2)).x in xs
