import math
import random

import pytest

from conftest import random_instance
from nonlinear_matching import (
    MAX,
    MIN,
    InstanceError,
    brute_force_solve,
    lp_norm,
    make_instance,
    max_norm,
    min_norm,
    norm_compare,
    polytope_vertices,
    project,
)
from nonlinear_matching.core import norm_power
from nonlinear_matching.norms import NegativeWeights


def test_norm_compare_examples():
    assert norm_compare(2, (3, 4), (5, 0)) == 0
    assert norm_compare(1, (2, 4), (3, 2)) == 1
    assert norm_compare("inf", (0, 4), (3, 3)) == 1
    with pytest.raises(InstanceError):
        norm_compare(2, (1,), (1, 2))


def test_min_norm_example(ex1):
    rep = min_norm(ex1, 2)
    assert rep.powered_value == 1
    assert rep.powered_ratio == 2 and rep.ratio == "sqrt(d)"
    assert project(ex1, rep.matching) == rep.projection
    assert rep.projection in polytope_vertices(ex1)


def test_max_norm_examples(ex1):
    rep = max_norm(ex1, math.inf)
    assert rep.powered_value == 4
    assert rep.powered_ratio == 1
    rep1 = max_norm(ex1, 1)
    assert 6 <= 2 * rep1.powered_value
    assert rep1.powered_ratio == 2
    assert project(ex1, rep1.matching) == rep1.projection


def test_zero_weights():
    zero = make_instance(3, 2, [[[0] * 3] * 3] * 2)
    for p in (1, 2, "inf"):
        assert min_norm(zero, p).powered_value == 0
        assert max_norm(zero, p).powered_value == 0


def test_single_weight_is_exact():
    rng = random.Random(51)
    for _ in range(10):
        inst = random_instance(rng, rng.randint(1, 4), 1, 0, 5)
        for p in (1, 3, "inf"):
            for solver, sense in ((min_norm, MIN), (max_norm, MAX)):
                obj = lp_norm(p, sense)
                _, best = brute_force_solve(inst, obj)
                assert solver(inst, p).powered_value == norm_power(best, obj.p)


def test_negative_weights_rejected():
    inst = make_instance(2, 1, [[[-1, 0], [0, 0]]])
    with pytest.raises(NegativeWeights):
        min_norm(inst, 1)
    with pytest.raises(NegativeWeights):
        max_norm(inst, 1)


def test_fractional_p_rejected(ex1):
    with pytest.raises(InstanceError):
        min_norm(ex1, 1.5)


def test_max_norm_candidates_are_permutations(ex1):
    rep = max_norm(ex1, 2)
    assert len(rep.candidates) == ex1.d
    assert rep.projection in rep.candidates


def test_min_norm_ratio_p_three():
    # the general d^p factor on the powered form
    rng = random.Random(52)
    for _ in range(10):
        inst = random_instance(rng, 4, 3, 0, 3)
        rep = min_norm(inst, 3)
        _, best = brute_force_solve(inst, lp_norm(3, MIN))
        assert rep.powered_ratio == 27
        assert rep.powered_value <= 27 * norm_power(best, 3)
