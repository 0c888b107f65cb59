"""Randomized optimization for arbitrary comparison-oracle objectives.

Substituting random integers a_ij into the symbolic matrix
``A_ij = a_ij * prod_k b_k^(w^k_ij)`` turns ``det(A)`` into a polynomial in
b whose monomials b^y are (with high probability) exactly the projections
y of perfect matchings.  Setting ``b_k = t^((u+1)^(k-1))`` packs all of them
into one univariate polynomial in t, recovered exactly by interpolation
from ``(u+1)^d`` integer determinants.

Randomness enters only when drawing the a_ij, through a seeded
``random.Random``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .core import (
    GREATER,
    Instance,
    InstanceError,
    Matching,
    Objective,
    OracleCounter,
    ScaleError,
    best_point,
    normalize_nonnegative,
    prefer,
    project,
)

DEFAULT_CAP_EVALS = 10**5


@dataclass(frozen=True)
class ASubstitution:
    """Positive integers a_ij in {1..s} substituted for the symbolic entries."""

    a: tuple
    s: int

    def __post_init__(self):
        a = tuple(tuple(int(v) for v in row) for row in self.a)
        if any(not 1 <= v <= self.s for row in a for v in row):
            raise InstanceError(f"substitution entries must lie in 1..{self.s}")
        object.__setattr__(self, "a", a)

    @classmethod
    def draw(cls, n: int, s: int, rng: random.Random) -> "ASubstitution":
        return cls(tuple(tuple(rng.randint(1, s) for _ in range(n)) for _ in range(n)), s)

    @classmethod
    def ones(cls, n: int) -> "ASubstitution":
        return cls(tuple((1,) * n for _ in range(n)), 1)


@dataclass(frozen=True)
class SupportSet:
    points: frozenset
    u: int
    coefficients: dict = field(default_factory=dict, compare=False, hash=False)

    def __contains__(self, y) -> bool:
        return tuple(y) in self.points

    def __len__(self) -> int:
        return len(self.points)


def as_rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def bareiss_det(M) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    M = [list(row) for row in M]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def support_bound(instance: Instance) -> int:
    """u = n * max weight; every projection lies in {0..u}^d."""
    return instance.n * instance.max_abs_weight


def _require_nonnegative(instance: Instance):
    if instance.min_weight < 0:
        raise InstanceError("weights must be nonnegative; call normalize_nonnegative first")


def _exponents(instance: Instance, u: int) -> list:
    base = u + 1
    return [
        [sum(w[i][j] * base**k for k, w in enumerate(instance.weights)) for j in range(instance.n)]
        for i in range(instance.n)
    ]


def det_at(instance: Instance, a: ASubstitution, t: int, u: int | None = None) -> int:
    """``det A(t)`` with entries ``a_ij * t^(sum_k w^k_ij (u+1)^(k-1))``."""
    _require_nonnegative(instance)
    if u is None:
        u = support_bound(instance)
    exps = _exponents(instance, u)
    n = instance.n
    return bareiss_det([[a.a[i][j] * t ** exps[i][j] for j in range(n)] for i in range(n)])


def interpolate(values) -> list:
    """Coefficients c_0..c_{N-1} of the polynomial through (t, values[t-1]), t = 1..N.

    Newton forward differences on unit-spaced nodes, expanded to the
    monomial basis over the common denominator (N-1)!.  Exact.
    """
    N = len(values)
    if N == 0:
        return []
    diffs, cur = [], list(values)
    for _ in range(N):
        diffs.append(cur[0])
        cur = [b - a for a, b in zip(cur, cur[1:])]
    # p(t) = sum_k diffs[k] * (t-1)(t-2)...(t-k) / k!
    denom = math.factorial(N - 1)
    numer = [0] * N
    falling = [1]  # coefficients of (t-1)...(t-k), low degree first
    for k in range(N):
        scale = diffs[k] * (denom // math.factorial(k))
        if scale:
            for j, c in enumerate(falling):
                numer[j] += scale * c
        nxt = [0] * (len(falling) + 1)
        for j, c in enumerate(falling):
            nxt[j + 1] += c
            nxt[j] -= (k + 1) * c
        falling = nxt
    out = []
    for v in numer:
        q, r = divmod(v, denom)
        if r:
            raise ArithmeticError("interpolated coefficient is not an integer")
        out.append(q)
    return out


def evaluate(coefficients, t: int) -> int:
    acc = 0
    for c in reversed(coefficients):
        acc = acc * t + c
    return acc


def _decode(e: int, base: int, d: int) -> tuple:
    y = []
    for _ in range(d):
        e, r = divmod(e, base)
        y.append(r)
    return tuple(y)


def support(instance: Instance, a: ASubstitution, cap_evals: int = DEFAULT_CAP_EVALS) -> SupportSet:
    """Projections y whose coefficient g_y(a) in det(A) is nonzero."""
    _require_nonnegative(instance)
    u = support_bound(instance)
    N = (u + 1) ** instance.d
    if N > cap_evals:
        raise ScaleError(f"support needs {N} determinant evaluations, cap is {cap_evals}")
    exps = _exponents(instance, u)
    n = instance.n
    values = []
    for t in range(1, N + 1):
        values.append(bareiss_det([[a.a[i][j] * t ** exps[i][j] for j in range(n)] for i in range(n)]))
    coeffs = interpolate(values)
    g = {_decode(e, u + 1, instance.d): c for e, c in enumerate(coeffs) if c}
    return SupportSet(frozenset(g), u, g)


def default_s(n: int) -> int:
    return 2 * n * n


def optimum_value_estimate(
    instance: Instance,
    objective: Objective,
    rng,
    s: int | None = None,
    counter: OracleCounter | None = None,
    cap_evals: int = DEFAULT_CAP_EVALS,
) -> tuple:
    """Oracle-best point of a random support: the optimal projection w.p. >= 1 - n/s.

    Weights are shifted nonnegative internally; the result is in the
    caller's coordinates.
    """
    rng = as_rng(rng)
    n = instance.n
    if n == 0:
        return (0,) * instance.d
    shifted, obj, v = normalize_nonnegative(instance, objective)
    s = s if s is not None else default_s(n)
    a = ASubstitution.draw(n, s, rng)
    sup = support(shifted, a, cap_evals)
    if not sup.points:
        raise ArithmeticError("empty support")
    y = best_point(obj, sup.points, counter)
    return tuple(c - n * v for c in y)


def restrict(instance: Instance, objective: Objective, partial) -> tuple[Instance, Objective]:
    """Sub-instance on the rows and columns left free by ``partial``.

    The returned objective compares y the way ``objective`` compares
    ``y + w(partial)``.
    """
    partial = sorted((int(i), int(j)) for i, j in partial)
    rows = [i for i, _ in partial]
    cols = [j for _, j in partial]
    n = instance.n
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise InstanceError("partial assignment is not a matching")
    if any(not (0 <= i < n and 0 <= j < n) for i, j in partial):
        raise InstanceError("partial assignment refers to a vertex outside K_{n,n}")
    free_rows = [i for i in range(n) if i not in set(rows)]
    free_cols = [j for j in range(n) if j not in set(cols)]
    weights = tuple(
        tuple(tuple(w[i][j] for j in free_cols) for i in free_rows) for w in instance.weights
    )
    offset = tuple(sum(w[i][j] for i, j in partial) for w in instance.weights)
    return Instance(len(free_rows), instance.d, weights), objective.shifted(offset)


@dataclass
class RandomSolveReport:
    matching: Matching
    projection: tuple
    trials: int
    oracle_queries: int
    method: str = "random"
    trial_projections: tuple = ()


def _greedy_trial(instance: Instance, objective: Objective, rng: random.Random,
                  counter: OracleCounter, cap_evals: int) -> Matching:
    n = instance.n
    partial: list = []
    used = set()
    for i in range(n):
        free = [j for j in range(n) if j not in used]
        if len(free) == 1:
            choice = free[0]
        else:
            choice = best = None
            for j in free:
                trial = partial + [(i, j)]
                sub, sub_obj = restrict(instance, objective, trial)
                m = n - len(trial)
                est = optimum_value_estimate(sub, sub_obj, rng, s=max(1, 2 * m * n),
                                             counter=counter, cap_evals=cap_evals)
                # back to full-instance coordinates: add the weight of the
                # partial matching (sub_obj.offset also carries the caller's own
                # offset, which prefer() applies itself)
                taken = tuple(sum(w[r][c] for r, c in trial) for w in instance.weights)
                full = tuple(a + b for a, b in zip(est, taken))
                # strict improvement only: the smallest j wins ties
                if best is None or prefer(objective, full, best, counter) == GREATER:
                    choice, best = j, full
        partial.append((i, choice))
        used.add(choice)
    return Matching(tuple(j for _, j in sorted(partial)))


def randomized_solve(
    instance: Instance,
    objective: Objective,
    rng,
    trials: int | None = None,
    counter: OracleCounter | None = None,
    cap_evals: int = DEFAULT_CAP_EVALS,
) -> RandomSolveReport:
    """Greedy self-reduction, repeated ``trials`` times (default n); keeps the best.

    Each trial fixes rows in order, giving row i the smallest free column
    whose estimated best completion is oracle-maximal.  One trial is optimal
    with probability at least 1/2.
    """
    rng = as_rng(rng)
    counter = counter or OracleCounter()
    trials = instance.n if trials is None else trials
    if trials < 1:
        raise InstanceError("trials must be >= 1")
    shifted, obj, _ = normalize_nonnegative(instance, objective)
    best = best_y = None
    seen = []
    for _ in range(trials):
        m = _greedy_trial(shifted, obj, rng, counter, cap_evals)
        y = project(instance, m)
        seen.append(y)
        if best is None or prefer(objective, y, best_y, counter) == GREATER:
            best, best_y = m, y
    return RandomSolveReport(best, best_y, trials, counter.queries, trial_projections=tuple(seen))

