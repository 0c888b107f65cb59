"""Determinant supports and the randomized greedy solver.

det(A) with random a_ij and packed powers of t is interpolated exactly; its
nonzero coefficients mark attainable projections.  The greedy solver then
fixes one edge per row using repeated optimum estimates.
"""

import random

from nonlinear_matching import (
    ASubstitution,
    brute_force_projections,
    example_one,
    quadratic_distance,
    randomized_solve,
    support,
)

inst = example_one()
Y = brute_force_projections(inst)
rng = random.Random(2024)
a = ASubstitution.draw(inst.n, 32, rng)
sup = support(inst, a)
print(f"{len(Y)} attainable projections; this draw recovers {len(sup)} of them")
print("missed:", sorted(Y - sup.points) or "none")
print("coefficient of b^(2,4):", sup.coefficients.get((2, 4)))

f = quadratic_distance((0, 0))
for trials in (1, 4):
    rep = randomized_solve(inst, f, rng, trials=trials)
    print(f"trials={trials}: {rep.matching.one_based()} -> {rep.projection}, "
          f"{rep.oracle_queries} oracle queries")
