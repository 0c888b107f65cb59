import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonlinear_matching import example_one
from nonlinear_matching.simplex import (
    INFEASIBLE,
    UNBOUNDED,
    StandardLP,
    birkhoff_system,
    check_certificate,
    maximize,
    minimize,
    solve,
)


def test_birkhoff_two_identity():
    A, b = birkhoff_system(2)
    out = maximize(A, b, [1, 0, 0, 0])
    assert out.optimal
    assert out.value == 1
    assert out.x == (1, 0, 0, 1)


def test_infeasible():
    out = maximize([[1]], [-1], [0])
    assert out.status == INFEASIBLE
    assert out.x is None


def test_unbounded():
    out = maximize([[1, -1]], [0], [1, 0])
    assert out.status == UNBOUNDED


def test_min_sense():
    out = minimize([[1, 1]], [3], [2, 1])
    assert out.value == 3 and out.x == (0, 3)


def test_example_one_second_weight_max(ex1):
    n = ex1.n
    A, b = birkhoff_system(n)
    c = [ex1.weights[1][v // n][v % n] for v in range(n * n)]
    out = maximize(A, b, c)
    assert out.value == 4
    assert check_certificate(StandardLP(A, b, c, "max"), out)


def test_rational_data():
    lp = StandardLP([[Fraction(1, 3), Fraction(2, 3)]], [Fraction(1, 2)], [1, 1], "max")
    out = solve(lp)
    assert out.value == Fraction(3, 2)
    assert check_certificate(lp, out)


def test_redundant_rows_dropped():
    # the Birkhoff system has rank 2n - 1; the basis must still have that size
    A, b = birkhoff_system(4)
    out = maximize(A, b, [1] * 16)
    assert len(out.basis) == 7
    assert all(out.x[j] == 0 for j in range(16) if j not in out.basis)


def test_deterministic():
    rng = random.Random(3)
    A = [[rng.randint(-3, 3) for _ in range(7)] for _ in range(4)]
    b = [rng.randint(0, 5) for _ in range(4)]
    c = [rng.randint(-5, 5) for _ in range(7)]
    assert maximize(A, b, c) == maximize(A, b, c)


def test_rejects_bad_shapes():
    with pytest.raises(ValueError):
        StandardLP([[1, 2]], [1, 2], [0, 0])
    with pytest.raises(ValueError):
        StandardLP([[1, 2]], [1], [0])
    with pytest.raises(ValueError):
        StandardLP([[1]], [1], [0], "sideways")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_birkhoff_vertices_are_permutations(n):
    rng = random.Random(n)
    A, b = birkhoff_system(n)
    for _ in range(6 if n < 5 else 3):
        c = [rng.randint(-9, 9) for _ in range(n * n)]
        sense = rng.choice(["max", "min"])
        lp = StandardLP(A, b, c, sense)
        out = solve(lp)
        assert all(v in (0, 1) for v in out.x)
        assert check_certificate(lp, out)


small = st.integers(-4, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.data())
def test_random_lps_certified(m, q, data):
    A = [[data.draw(small) for _ in range(q)] for _ in range(m)]
    # b from a nonnegative point, so the LP is feasible
    x0 = [data.draw(st.integers(0, 3)) for _ in range(q)]
    b = [sum(a * v for a, v in zip(row, x0)) for row in A]
    c = [data.draw(small) for _ in range(q)]
    sense = data.draw(st.sampled_from(["max", "min"]))
    lp = StandardLP(A, b, c, sense)
    out = solve(lp)
    assert out.status != INFEASIBLE
    if out.optimal:
        assert check_certificate(lp, out)
        assert out.value == sum(ci * xi for ci, xi in zip(lp.c, out.x))
        better = out.value >= sum(ci * xi for ci, xi in zip(c, x0))
        assert better if sense == "max" else out.value <= sum(ci * xi for ci, xi in zip(c, x0))
