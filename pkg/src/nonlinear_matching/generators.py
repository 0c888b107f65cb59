"""Hard instances from subset sum and 3-dimensional matching, plus the
specified-values decision problem they feed.

Note on ``three_dm_instance``: the reduction only counts, for each k, how
many matched edges (i, j) have ``x[i][j][k] = 1``.  A single edge lying in
two triples can satisfy two targets at once, so a YES answer on the
generated instance does not always mean the tensor has a 3-dimensional
matching.  See ``tests/test_generators.py`` for a two-by-two witness.
"""

from __future__ import annotations

import enum

from .core import (
    DEFAULT_BRUTE_FORCE_CAP,
    Instance,
    InstanceError,
    brute_force_projections,
    make_instance,
    normalize_nonnegative,
)
from .polytope import grid_bounds
from .randomized import DEFAULT_CAP_EVALS, ASubstitution, as_rng, default_s, support


class Decision(enum.Enum):
    YES = "YES"
    NO = "NO"
    PROBABLY_NO = "PROBABLY_NO"


EXAMPLE_ONE = (
    ((1, 0, 0, 0), (1, 0, 0, 1), (1, 1, 0, 0), (0, 0, 0, 1)),
    ((1, 1, 0, 1), (0, 0, 1, 1), (0, 0, 1, 0), (1, 1, 0, 0)),
)


def example_one() -> Instance:
    """The 4 x 4, two-weight worked example used throughout the docs and tests."""
    return make_instance(4, 2, EXAMPLE_ONE)


def subset_sum_instance(a0: int, values) -> tuple[Instance, tuple]:
    """Single-weight instance on K_{2m,2m} with target ``(a0,)``.

    ``w[i][j] = a_i`` for the top-left m x m block, zero elsewhere: the
    achievable weights are exactly the subset sums of ``values``.
    """
    values = [int(v) for v in values]
    m = len(values)
    if m < 1:
        raise InstanceError("subset sum needs at least one value")
    n = 2 * m
    w = [[values[i] if i < m and j < m else 0 for j in range(n)] for i in range(n)]
    return make_instance(n, 1, [w]), (int(a0),)


def three_dm_instance(x) -> tuple[Instance, tuple]:
    """Binary n x n x n tensor -> instance with ``w^k[i][j] = x[i][j][k]`` and all-ones target."""
    x = [[[int(v) for v in col] for col in row] for row in x]
    n = len(x)
    if any(len(row) != n or any(len(col) != n for col in row) for row in x):
        raise InstanceError("3DM tensor must be n x n x n")
    if any(v not in (0, 1) for row in x for col in row for v in col):
        raise InstanceError("3DM tensor must be binary")
    weights = [[[x[i][j][k] for j in range(n)] for i in range(n)] for k in range(n)]
    return make_instance(n, n, weights), (1,) * n


def specified_decision(
    instance: Instance,
    target,
    mode: str = "exact",
    seed=None,
    s: int | None = None,
    cap: int = DEFAULT_BRUTE_FORCE_CAP,
    cap_evals: int = DEFAULT_CAP_EVALS,
) -> Decision:
    """Is there a perfect matching whose projection is exactly ``target``?

    ``mode="exact"`` enumerates matchings.  ``mode="randomized"`` checks the
    target against one random determinant support: YES is always right,
    PROBABLY_NO is wrong with probability at most n/s (s defaults to 2n^2).
    """
    target = tuple(int(v) for v in target)
    if len(target) != instance.d:
        raise InstanceError(f"target has length {len(target)}, instance has d={instance.d}")
    if mode == "exact":
        return Decision.YES if target in brute_force_projections(instance, cap) else Decision.NO
    if mode != "randomized":
        raise InstanceError(f"unknown decision mode {mode!r}")
    # outside the box the answer is a certain NO rather than PROBABLY_NO
    if target not in grid_bounds(instance):
        return Decision.NO
    shifted, _, v = normalize_nonnegative(instance)
    shifted_target = tuple(c + instance.n * v for c in target)
    a = ASubstitution.draw(instance.n, s or default_s(instance.n), as_rng(seed))
    sup = support(shifted, a, cap_evals)
    return Decision.YES if shifted_target in sup else Decision.PROBABLY_NO
