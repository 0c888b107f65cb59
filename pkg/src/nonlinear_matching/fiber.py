"""Fibers ``{x bistochastic : w . x = y}`` of integer points y."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import Instance, InstanceError, Matching, ScaleError
from .simplex import StandardLP, birkhoff_system, solve

ENUMERATION_MAX_N = 4
ENUMERATION_MAX_D = 3


class FiberEmpty(ValueError):
    """The fiber of the requested point is empty."""


class NonIntegralVertex(ValueError):
    """The LP returned a fractional vertex where a permutation matrix was required."""


@dataclass(frozen=True)
class FiberVertex:
    """A vertex of a fiber polytope, as an exact n x n rational matrix."""

    x: tuple

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.x for v in row)

    def to_matching(self) -> Matching:
        if not self.is_integral:
            raise NonIntegralVertex("fiber vertex has fractional entries")
        return Matching.from_matrix(self.x)

    def __str__(self):
        return "\n".join(" ".join(f"{str(v):>5}" for v in row) for row in self.x)


def fiber_system(instance: Instance, y) -> tuple[list, list]:
    """Equality system of the fiber of ``y`` over row-major variables."""
    y = tuple(y)
    if len(y) != instance.d:
        raise InstanceError(f"point has length {len(y)}, instance has d={instance.d}")
    n = instance.n
    A, b = birkhoff_system(n)
    for k, w in enumerate(instance.weights):
        A.append([w[v // n][v % n] for v in range(n * n)])
        b.append(y[k])
    return A, b


def _as_matrix(x, n: int) -> tuple:
    return tuple(tuple(x[i * n + j] for j in range(n)) for i in range(n))


def fiber_vertex(instance: Instance, y) -> FiberVertex | None:
    """A vertex of the fiber of ``y``, or None when the fiber is empty.

    Which vertex comes back is fixed by the simplex pivot rule.
    """
    A, b = fiber_system(instance, y)
    out = solve(StandardLP(A, b, [0] * len(A[0]), "max"))
    if not out.optimal:
        return None
    return FiberVertex(_as_matrix(out.x, instance.n))


def fiber_permutation(instance: Instance, y) -> Matching:
    """Recover a matching projecting to ``y``, a vertex of the projected polytope.

    Raises FiberEmpty if the fiber is empty and NonIntegralVertex if the LP
    vertex is fractional, which means ``y`` was not a vertex.  Never rounds.
    """
    v = fiber_vertex(instance, y)
    if v is None:
        raise FiberEmpty(f"fiber of {tuple(y)} is empty")
    if not v.is_integral:
        raise NonIntegralVertex(f"fiber of {tuple(y)} returned a fractional vertex")
    return v.to_matching()


def _row_reduce(A, b):
    """Reduced row echelon form of [A | b]; drops zero rows.

    Returns (rows, rhs) or None when the system is inconsistent.
    """
    M = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(A, b)]
    ncols = len(A[0])
    out, piv_row = [], 0
    for col in range(ncols):
        piv = next((r for r in range(piv_row, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[piv_row], M[piv] = M[piv], M[piv_row]
        p = M[piv_row][col]
        M[piv_row] = [v / p for v in M[piv_row]]
        for r in range(len(M)):
            if r != piv_row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[piv_row])]
        piv_row += 1
    for r in range(piv_row, len(M)):
        if M[r][-1] != 0:
            return None
    out = M[:piv_row]
    return [row[:-1] for row in out], [row[-1] for row in out]


def _solve_basis(rows, rhs, cols):
    """Solve the square system on columns ``cols``; None when singular."""
    r = len(cols)
    M = [[row[c] for c in cols] + [h] for row, h in zip(rows, rhs)]
    for col in range(r):
        piv = next((i for i in range(col, r) if M[i][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        if p != 1:
            M[col] = [v / p for v in M[col]]
        for i in range(r):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * c for a, c in zip(M[i], M[col])]
    return [row[-1] for row in M]


def enumerate_fiber_vertices(instance: Instance, y) -> set:
    """Every vertex of the fiber of ``y``, by brute-force basis enumeration.

    A test oracle: drops coordinates that are zero on the whole fiber, tries
    every remaining column subset of size rank, keeps the nonsingular ones
    with a nonnegative solution, deduplicates exactly.
    Bounded to n <= 4 and d <= 3.
    """
    if instance.n > ENUMERATION_MAX_N or instance.d > ENUMERATION_MAX_D:
        raise ScaleError(
            f"fiber vertex enumeration limited to n <= {ENUMERATION_MAX_N}, d <= {ENUMERATION_MAX_D}"
        )
    n = instance.n
    q = n * n
    A, b = fiber_system(instance, y)
    if fiber_vertex(instance, y) is None:
        return set()
    # coordinates that vanish on the whole fiber never enter a basis
    live = [j for j in range(q)
            if solve(StandardLP(A, b, [int(k == j) for k in range(q)], "max")).value > 0]
    reduced = _row_reduce([[row[j] for j in live] for row in A], b)
    if reduced is None:
        return set()
    rows, rhs = reduced
    rank = len(rows)
    found = set()
    for cols in itertools.combinations(range(len(live)), rank):
        sol = _solve_basis(rows, rhs, cols)
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * q
        for c, v in zip(cols, sol):
            x[live[c]] = v
        found.add(FiberVertex(_as_matrix(x, n)))
    return found
