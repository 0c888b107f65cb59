"""Subset-sum and 3-dimensional matching instances and the exact-target question."""

from nonlinear_matching import specified_decision, subset_sum_instance, three_dm_instance

for a0 in (5, 1, 0):
    inst, target = subset_sum_instance(a0, [2, 3])
    print(f"subset of {{2, 3}} summing to {a0}? {specified_decision(inst, target).value}")

inst, target = subset_sum_instance(5, [2, 3])
print("randomized test:", specified_decision(inst, target, mode="randomized", seed=1).value)

# a diagonal tensor has the identity 3-dimensional matching
x = [[[int(i == j == k) for k in range(3)] for j in range(3)] for i in range(3)]
print("diagonal 3DM tensor:", specified_decision(*three_dm_instance(x)).value)

# the reduction counts per-k hits, so one edge in two triples can fake a solution
x = [[[1, 1], [0, 0]], [[0, 0], [0, 0]]]
print("tensor with no 3DM, reduced instance says:", specified_decision(*three_dm_instance(x)).value)
