"""Approximate lp-norm minimization and maximization for nonnegative weights.

Norms are never evaluated with roots.  Points are compared through the
integer ``sum |y_k|^p`` (``max |y_k|`` for p = inf), and each guarantee is
stated on that powered quantity so it can be checked in exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    GREATER,
    MAX,
    MIN,
    Instance,
    InstanceError,
    Matching,
    OracleCounter,
    best_point,
    lp_norm,
    norm_power,
    parse_p,
    prefer,
    project,
)
from .fiber import fiber_permutation
from .polytope import polytope_vertices
from .simplex import StandardLP, birkhoff_system, solve


class NegativeWeights(InstanceError):
    """Norm approximation requires nonnegative weights."""


@dataclass
class NormSolveReport:
    """Result of a norm solve.

    ``powered_ratio`` bounds the powered norm P(y) (``sum |y_k|^p``, or
    ``max |y_k|`` for p = inf): for minimization P(output) <= powered_ratio *
    P(optimum); for maximization P(optimum) <= powered_ratio * P(output).
    """

    matching: Matching
    projection: tuple
    p: object
    sense: str
    powered_ratio: int
    ratio: str
    oracle_queries: int = 0
    candidates: tuple = ()

    @property
    def powered_value(self) -> int:
        return norm_power(self.projection, self.p)


def norm_compare(p, y, z) -> int:
    """-1/0/1 ordering of ``||y||_p`` against ``||z||_p``, exactly."""
    p = parse_p(p)
    if len(y) != len(z):
        raise InstanceError(f"cannot compare points of lengths {len(y)} and {len(z)}")
    a, b = norm_power(y, p), norm_power(z, p)
    return (a > b) - (a < b)


def _require_nonnegative(instance: Instance):
    if instance.min_weight < 0:
        raise NegativeWeights("norm approximation needs nonnegative weights")


def min_norm(instance: Instance, p, counter: OracleCounter | None = None) -> NormSolveReport:
    """Vertex of the projected polytope with the smallest norm, lifted to a matching.

    Within a factor d of optimal for every p, and within sqrt(d) for p = 2.
    """
    p = parse_p(p)
    _require_nonnegative(instance)
    counter = counter or OracleCounter()
    objective = lp_norm(p, MIN)
    y = best_point(objective, polytope_vertices(instance), counter)
    matching = fiber_permutation(instance, y)
    d = instance.d
    if p == 2:
        powered, text = d, "sqrt(d)"
    elif p == math.inf:
        powered, text = d, "d"
    else:
        powered, text = d ** p, "d"
    return NormSolveReport(matching, project(instance, matching), p, MIN, powered, text,
                           counter.queries)


def _lp_max_permutation(instance: Instance, k: int) -> Matching:
    n = instance.n
    A, b = birkhoff_system(n)
    c = [instance.weights[k][v // n][v % n] for v in range(n * n)]
    out = solve(StandardLP(A, b, c, "max"))
    x = tuple(tuple(out.x[i * n + j] for j in range(n)) for i in range(n))
    return Matching.from_matrix(x)


def max_norm(instance: Instance, p, counter: OracleCounter | None = None) -> NormSolveReport:
    """Best of the d single-weight LP optima.

    Within a factor d^(1/p) of optimal; exact for p = inf.  Uses d linear
    programs, so it is polynomial in the bit size of the weights.
    """
    p = parse_p(p)
    _require_nonnegative(instance)
    counter = counter or OracleCounter()
    objective = lp_norm(p, MAX)
    best = best_y = None
    candidates = []
    for k in range(instance.d):
        m = _lp_max_permutation(instance, k)
        y = project(instance, m)
        candidates.append(y)
        if best is None or prefer(objective, y, best_y, counter) == GREATER:
            best, best_y = m, y
    if p == math.inf:
        powered, text = 1, "1"
    else:
        powered, text = instance.d, "d^(1/p)"
    return NormSolveReport(best, best_y, p, MAX, powered, text, counter.queries,
                           tuple(candidates))
