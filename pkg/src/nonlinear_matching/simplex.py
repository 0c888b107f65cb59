"""Exact two-phase simplex for ``max/min c.x  s.t.  A x = b, x >= 0``.

The tableau is kept in integers: every row is stored scaled by a positive
factor and reduced by the gcd of its entries after each pivot, so no
``Fraction`` objects live inside the inner loop.  Pivoting follows Bland's
rule (smallest entering index, smallest leaving basic index among ratio
ties), which guarantees termination and makes the returned vertex a pure
function of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


@dataclass(frozen=True)
class StandardLP:
    A: tuple
    b: tuple
    c: tuple
    sense: str = "max"

    def __post_init__(self):
        A = tuple(tuple(Fraction(v) for v in row) for row in self.A)
        b = tuple(Fraction(v) for v in self.b)
        c = tuple(Fraction(v) for v in self.c)
        if len(A) != len(b):
            raise ValueError(f"A has {len(A)} rows but b has {len(b)} entries")
        if any(len(row) != len(c) for row in A):
            raise ValueError("every row of A must have len(c) entries")
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def q(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class LPOutcome:
    status: str
    x: tuple | None = None
    value: Fraction | None = None
    basis: frozenset | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _lcm_denominator(values) -> int:
    return math.lcm(*(v.denominator for v in values)) if values else 1


def _reduce(row: list) -> list:
    g = math.gcd(*row)
    if g > 1:
        return [v // g for v in row]
    return row


class _Tableau:
    def __init__(self, rows: list, basis: list, ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols  # columns excluding rhs

    def pivot(self, r: int, col: int, obj: list) -> list:
        prow = self.rows[r]
        a = prow[col]
        if a < 0:
            prow = [-v for v in prow]
            a = -a
        prow = _reduce(prow)
        a = prow[col]
        self.rows[r] = prow
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[col]
            if f:
                self.rows[i] = _reduce([a * x - f * y for x, y in zip(row, prow)])
        f = obj[col]
        if f:
            obj = _reduce([a * x - f * y for x, y in zip(obj, prow)])
        self.basis[r] = col
        return obj

    def price_out(self, cost: list) -> list:
        """Objective row ``-cost`` with basic columns eliminated."""
        obj = [-v for v in cost] + [0]
        for r, col in enumerate(self.basis):
            f = obj[col]
            if f:
                row = self.rows[r]
                s = row[col]
                obj = _reduce([s * x - f * y for x, y in zip(obj, row)])
        return obj

    def run(self, obj: list, allowed: int) -> tuple[str, list]:
        """Maximize; ``allowed`` bounds the columns that may enter."""
        while True:
            col = next((j for j in range(allowed) if obj[j] < 0), None)
            if col is None:
                return OPTIMAL, obj
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a <= 0:
                    continue
                rhs = row[-1]
                if best is None:
                    best = (i, rhs, a)
                    continue
                _, brhs, ba = best
                lhs, rhs_cmp = rhs * ba, brhs * a
                if lhs < rhs_cmp or (lhs == rhs_cmp and self.basis[i] < self.basis[best[0]]):
                    best = (i, rhs, a)
            if best is None:
                return UNBOUNDED, obj
            obj = self.pivot(best[0], col, obj)

    def solution(self, q: int) -> tuple:
        x = [Fraction(0)] * q
        for row, col in zip(self.rows, self.basis):
            if col < q:
                x[col] = Fraction(row[-1], row[col])
        return tuple(x)


def solve(lp: StandardLP) -> LPOutcome:
    """Solve exactly; returns a basic optimal solution (a vertex) if one exists."""
    m, q = lp.m, lp.q

    # integer rows, nonnegative rhs, one artificial per row
    rows = []
    for i in range(m):
        scale = _lcm_denominator(lp.A[i] + (lp.b[i],))
        row = [int(v * scale) for v in lp.A[i]]
        rhs = int(lp.b[i] * scale)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [0] * m
        art[i] = 1
        rows.append(row + art + [rhs])
    tab = _Tableau(rows, [q + i for i in range(m)], q + m)

    # phase one: maximize -(sum of artificials)
    obj = tab.price_out([0] * q + [-1] * m)
    _, obj = tab.run(obj, q + m)
    if obj[-1] != 0:
        return LPOutcome(INFEASIBLE)

    # drive zero-level artificials out of the basis; drop redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= q:
            row = tab.rows[r]
            col = next((j for j in range(q) if row[j] != 0), None)
            if col is None:
                del tab.rows[r]
                del tab.basis[r]
                continue
            tab.pivot(r, col, [0] * (q + m + 1))
        r += 1
    tab.rows = [row[:q] + row[-1:] for row in tab.rows]
    tab.ncols = q

    # phase two
    cscale = _lcm_denominator(lp.c)
    sign = 1 if lp.sense == "max" else -1
    cost = [sign * int(v * cscale) for v in lp.c]
    obj = tab.price_out(cost)
    status, obj = tab.run(obj, q)
    if status == UNBOUNDED:
        return LPOutcome(UNBOUNDED)
    x = tab.solution(q)
    value = sum((ci * xi for ci, xi in zip(lp.c, x)), Fraction(0))
    return LPOutcome(OPTIMAL, x, value, frozenset(tab.basis))


def maximize(A: Sequence, b: Sequence, c: Sequence) -> LPOutcome:
    return solve(StandardLP(A, b, c, "max"))


def minimize(A: Sequence, b: Sequence, c: Sequence) -> LPOutcome:
    return solve(StandardLP(A, b, c, "min"))


def birkhoff_system(n: int) -> tuple[list, list]:
    """Row-sum and column-sum equalities over row-major variables x[i*n + j]."""
    A, b = [], []
    for i in range(n):
        A.append([1 if k // n == i else 0 for k in range(n * n)])
        b.append(1)
    for j in range(n):
        A.append([1 if k % n == j else 0 for k in range(n * n)])
        b.append(1)
    return A, b


def check_certificate(lp: StandardLP, out: LPOutcome) -> bool:
    """Independent optimality check of an OPTIMAL outcome.

    Verifies primal feasibility exactly, then rebuilds the basis inverse from
    scratch and confirms every reduced cost has the right sign.
    """
    if not out.optimal:
        raise ValueError("no certificate for a non-optimal outcome")
    x = out.x
    if any(v < 0 for v in x):
        return False
    for row, bi in zip(lp.A, lp.b):
        if sum(a * v for a, v in zip(row, x)) != bi:
            return False
    basis = sorted(out.basis)
    if any(x[j] != 0 for j in range(lp.q) if j not in out.basis):
        return False
    # duals y solve y^T A_B = c_B on a maximal independent row subset
    rows = _independent_rows([[lp.A[i][j] for j in basis] for i in range(lp.m)])
    if len(rows) != len(basis):
        return False
    B = [[lp.A[i][j] for i in rows] for j in basis]  # B^T, one equation per basic column
    y = _solve_square(B, [lp.c[j] for j in basis])
    if y is None:
        return False
    sign = 1 if lp.sense == "max" else -1
    for j in range(lp.q):
        reduced = lp.c[j] - sum(yi * lp.A[i][j] for yi, i in zip(y, rows))
        if sign * reduced > 0:
            return False
    return True


def _independent_rows(M) -> list[int]:
    picked, echelon = [], []
    for idx, row in enumerate(M):
        v = list(row)
        for piv_col, prow in echelon:
            if v[piv_col]:
                f = v[piv_col] / prow[piv_col]
                v = [a - f * b for a, b in zip(v, prow)]
        lead = next((k for k, a in enumerate(v) if a), None)
        if lead is not None:
            echelon.append((lead, v))
            picked.append(idx)
    return picked


def _solve_square(M, rhs):
    n = len(M)
    aug = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[-1] for row in aug]
