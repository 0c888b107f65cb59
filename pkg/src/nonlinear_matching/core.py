"""Domain types, comparison oracles and brute-force reference solvers.

Everything here works on exact Python integers (and ``Fraction`` for table
objectives); no floating point is involved anywhere.

Conventions: rows and columns are 0-based in the library.  A matching is
stored as ``sigma`` with ``sigma[i]`` the column matched to row ``i``.  The
JSON layer in :mod:`nonlinear_matching.cli` converts to 1-based columns.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

MAX = "max"
MIN = "min"

LESS, EQUAL, GREATER = -1, 0, 1

DEFAULT_BRUTE_FORCE_CAP = 8

Projection = tuple  # tuple[int, ...] of length d


class InstanceError(ValueError):
    """Raised for malformed instances, matchings or objectives."""


class ScaleError(ValueError):
    """Raised when an input exceeds a configured size guard."""


# ---------------------------------------------------------------------------
# Instance / Matching
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """``d`` integer weight matrices on the edges of K_{n,n}.

    ``weights[k][i][j]`` is the weight of edge (i, j) under the k-th
    weight function.  Build with :func:`make_instance` to get validation.
    """

    n: int
    d: int
    weights: tuple

    def weight(self, k: int, i: int, j: int) -> int:
        return self.weights[k][i][j]

    @property
    def max_abs_weight(self) -> int:
        return max((abs(v) for w in self.weights for row in w for v in row), default=0)

    @property
    def min_weight(self) -> int:
        return min((v for w in self.weights for row in w for v in row), default=0)

    def edge_vector(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(w[i][j] for w in self.weights)


def make_instance(n: int, d: int, weights: Sequence) -> Instance:
    """Validate and freeze an instance.

    ``weights`` may be any nested sequence (lists, tuples, numpy arrays of
    integer dtype) of shape (d, n, n).
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceError(f"n must be a positive integer, got {n!r}")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InstanceError(f"d must be a positive integer, got {d!r}")
    weights = list(weights)
    if len(weights) != d:
        raise InstanceError(f"expected {d} weight matrices, got {len(weights)}")
    frozen = []
    for k, w in enumerate(weights):
        rows = list(w)
        if len(rows) != n:
            raise InstanceError(f"weights[{k}] has {len(rows)} rows, expected {n}")
        mat = []
        for i, row in enumerate(rows):
            row = list(row)
            if len(row) != n:
                raise InstanceError(f"weights[{k}][{i}] has {len(row)} entries, expected {n}")
            mat.append(tuple(_as_int(v, f"weights[{k}][{i}]") for v in row))
        frozen.append(tuple(mat))
    return Instance(n, d, tuple(frozen))


def _as_int(v, where: str) -> int:
    if isinstance(v, bool):
        raise InstanceError(f"{where}: booleans are not weights")
    if isinstance(v, int):
        return v
    # numpy integer scalars and integral Fractions
    try:
        iv = int(v)
    except (TypeError, ValueError):
        raise InstanceError(f"{where}: non-integer entry {v!r}") from None
    if iv != v:
        raise InstanceError(f"{where}: non-integer entry {v!r}")
    return iv


@dataclass(frozen=True)
class Matching:
    """A perfect matching of K_{n,n} as a permutation (0-based)."""

    sigma: tuple

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        if sorted(sigma) != list(range(len(sigma))):
            raise InstanceError(f"not a permutation: {self.sigma!r}")
        object.__setattr__(self, "sigma", sigma)

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(enumerate(self.sigma))

    @property
    def sign(self) -> int:
        # parity from the cycle decomposition
        seen = [False] * self.n
        transpositions = 0
        for start in range(self.n):
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.sigma[i]
                length += 1
            if length:
                transpositions += length - 1
        return -1 if transpositions % 2 else 1

    def to_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(1 if self.sigma[i] == j else 0 for j in range(self.n)) for i in range(self.n)
        )

    @classmethod
    def from_matrix(cls, x) -> "Matching":
        """Recover the permutation from a 0/1 permutation matrix."""
        sigma = []
        for i, row in enumerate(x):
            ones = [j for j, v in enumerate(row) if v == 1]
            if len(ones) != 1 or any(v not in (0, 1) for v in row):
                raise InstanceError(f"row {i} is not a permutation-matrix row")
            sigma.append(ones[0])
        return cls(tuple(sigma))

    def one_based(self) -> list[int]:
        return [s + 1 for s in self.sigma]


def project(instance: Instance, matching: Matching) -> Projection:
    """Image ``w . x`` of a matching: one exact integer per weight function."""
    if matching.n != instance.n:
        raise InstanceError(f"matching has size {matching.n}, instance has n={instance.n}")
    return tuple(sum(w[i][j] for i, j in enumerate(matching.sigma)) for w in instance.weights)


def project_matrix(instance: Instance, x) -> tuple:
    """``w . x`` for an arbitrary (possibly fractional) n x n matrix."""
    return tuple(
        sum(w[i][j] * x[i][j] for i in range(instance.n) for j in range(instance.n))
        for w in instance.weights
    )


# ---------------------------------------------------------------------------
# Objectives and the comparison oracle
# ---------------------------------------------------------------------------


class OracleCounter:
    """Thread-safe count of comparison-oracle queries."""

    def __init__(self):
        self._lock = threading.Lock()
        self._queries = 0

    @property
    def queries(self) -> int:
        return self._queries

    def increment(self, k: int = 1) -> None:
        with self._lock:
            self._queries += k

    def __repr__(self):
        return f"OracleCounter(queries={self._queries})"


LP_NORM = "lp_norm"
QUADRATIC_DISTANCE = "quadratic_distance"
LINEAR = "linear"
TABLE = "table"
KINDS = (LP_NORM, QUADRATIC_DISTANCE, LINEAR, TABLE)


def parse_p(p):
    """Accept a positive integer or infinity (``math.inf`` / ``"inf"``)."""
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "∞"):
            return math.inf
        try:
            p = int(p)
        except ValueError:
            raise InstanceError(f"p must be a positive integer or 'inf', got {p!r}") from None
    if isinstance(p, float):
        if p == math.inf:
            return math.inf
        if p.is_integer():
            p = int(p)
        else:
            raise InstanceError(f"fractional p={p} is not supported")
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise InstanceError(f"p must be a positive integer or 'inf', got {p!r}")
    return p


@dataclass(frozen=True)
class Objective:
    """An objective f on Z^d, exposed only through comparisons.

    ``offset`` shifts the argument: the objective evaluates ``f(y + offset)``.
    Normalization and restriction produce objectives with nonzero offsets.
    """

    kind: str
    sense: str = MAX
    p: object = None
    u: tuple | None = None
    c: tuple | None = None
    table: Mapping | None = None
    default: Fraction | None = None
    offset: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InstanceError(f"unknown objective kind {self.kind!r}")
        if self.sense not in (MAX, MIN):
            raise InstanceError(f"sense must be 'max' or 'min', got {self.sense!r}")
        if self.kind == LP_NORM:
            object.__setattr__(self, "p", parse_p(self.p))
        if self.kind == QUADRATIC_DISTANCE:
            if self.u is None:
                raise InstanceError("quadratic_distance needs a center u")
            object.__setattr__(self, "u", tuple(_as_int(v, "u") for v in self.u))
        if self.kind == LINEAR:
            if self.c is None:
                raise InstanceError("linear objective needs a coefficient vector c")
            object.__setattr__(self, "c", tuple(_as_int(v, "c") for v in self.c))
        if self.kind == TABLE:
            if self.table is None:
                raise InstanceError("table objective needs a table")
            frozen = {tuple(int(v) for v in y): Fraction(val) for y, val in dict(self.table).items()}
            object.__setattr__(self, "table", frozen)
            if self.default is not None:
                object.__setattr__(self, "default", Fraction(self.default))
        if self.offset is not None:
            object.__setattr__(self, "offset", tuple(int(v) for v in self.offset))

    def __hash__(self):
        table = tuple(sorted(self.table.items())) if self.table is not None else None
        return hash((self.kind, self.sense, self.p, self.u, self.c, table, self.default, self.offset))

    @property
    def dim(self) -> int | None:
        for vec in (self.u, self.c, self.offset):
            if vec is not None:
                return len(vec)
        if self.table:
            return len(next(iter(self.table)))
        return None

    def value(self, y) -> int | Fraction:
        """Exact comparison key of ``y``.

        For lp norms this is the p-th power of the norm (or the max-abs
        coordinate for p = inf), which orders points exactly like the norm.
        """
        y = tuple(y)
        if self.offset is not None:
            if len(self.offset) != len(y):
                raise InstanceError(f"point of length {len(y)} for objective of dimension {len(self.offset)}")
            y = tuple(a + b for a, b in zip(y, self.offset))
        if self.kind == LP_NORM:
            return norm_power(y, self.p)
        if self.kind == QUADRATIC_DISTANCE:
            _check_len(y, self.u)
            return sum((a - b) ** 2 for a, b in zip(y, self.u))
        if self.kind == LINEAR:
            _check_len(y, self.c)
            return sum(a * b for a, b in zip(y, self.c))
        try:
            return self.table[y]
        except KeyError:
            if self.default is None:
                raise InstanceError(f"table objective has no value for {y}") from None
            return self.default

    def shifted(self, delta) -> "Objective":
        """Objective comparing ``y`` the way ``self`` compares ``y + delta``."""
        delta = tuple(int(v) for v in delta)
        base = self.offset or (0,) * len(delta)
        if len(base) != len(delta):
            raise InstanceError("offset dimension mismatch")
        return replace(self, offset=tuple(a + b for a, b in zip(base, delta)))

    def with_sense(self, sense: str) -> "Objective":
        return replace(self, sense=sense)


def lp_norm(p, sense: str = MAX) -> Objective:
    return Objective(LP_NORM, sense=sense, p=p)


def quadratic_distance(u, sense: str = MAX) -> Objective:
    return Objective(QUADRATIC_DISTANCE, sense=sense, u=tuple(u))


def linear(c, sense: str = MAX) -> Objective:
    return Objective(LINEAR, sense=sense, c=tuple(c))


def table(entries: Mapping, sense: str = MAX, default=None) -> Objective:
    return Objective(TABLE, sense=sense, table=dict(entries), default=default)


def _check_len(y, vec):
    if len(y) != len(vec):
        raise InstanceError(f"point of length {len(y)} compared with vector of length {len(vec)}")


def norm_power(y, p) -> int:
    """Sum of |y_k|^p for integer p, or max |y_k| for p = inf."""
    if p == math.inf:
        return max((abs(v) for v in y), default=0)
    return sum(abs(v) ** p for v in y)


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def compare(objective: Objective, y, z, counter: OracleCounter | None = None) -> int:
    """Order ``f(y)`` against ``f(z)``: LESS, EQUAL or GREATER.

    The raw ordering of the objective's values, independent of the sense.
    """
    y, z = tuple(y), tuple(z)
    if len(y) != len(z):
        raise InstanceError(f"cannot compare points of lengths {len(y)} and {len(z)}")
    if counter is not None:
        counter.increment()
    return _cmp(objective.value(y), objective.value(z))


def prefer(objective: Objective, y, z, counter: OracleCounter | None = None) -> int:
    """GREATER when ``y`` is strictly better than ``z`` under the objective's sense."""
    c = compare(objective, y, z, counter)
    return c if objective.sense == MAX else -c


def best_point(objective: Objective, points: Iterable, counter: OracleCounter | None = None):
    """Oracle-best point; ties go to the lexicographically smallest point."""
    best = None
    for y in sorted(tuple(p) for p in points):
        if best is None or prefer(objective, y, best, counter) == GREATER:
            best = y
    return best


# ---------------------------------------------------------------------------
# Brute force references
# ---------------------------------------------------------------------------


def _check_cap(instance: Instance, cap: int):
    if instance.n > cap:
        raise ScaleError(f"brute force limited to n <= {cap}, got n={instance.n}")


def all_matchings(n: int):
    for sigma in itertools.permutations(range(n)):
        yield Matching(sigma)


def brute_force_solve(
    instance: Instance,
    objective: Objective,
    cap: int = DEFAULT_BRUTE_FORCE_CAP,
    counter: OracleCounter | None = None,
) -> tuple[Matching, Projection]:
    """Enumerate all n! matchings; ties go to the lexicographically smallest sigma."""
    _check_cap(instance, cap)
    best = best_y = None
    for m in all_matchings(instance.n):
        y = project(instance, m)
        if best is None or prefer(objective, y, best_y, counter) == GREATER:
            best, best_y = m, y
    return best, best_y


BITSET_LIMIT = 1 << 20


def brute_force_projections(instance: Instance, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> set:
    """The exact set of projections of all permutation matrices.

    Exhaustive, but shares work between matchings: rows are assigned in
    order and ``reach[mask]`` holds every partial sum reachable with the
    columns in ``mask``, so the cost is 2^n * n * |result| rather than n!.
    Partial sums are packed as set bits of one integer when the packed
    range is small enough.
    """
    _check_cap(instance, cap)
    n, d = instance.n, instance.d
    # subtract row minima so every partial sum is nonnegative
    lows = [[min(w[i]) for i in range(n)] for w in instance.weights]
    vec = [[tuple(w[i][j] - lows[k][i] for k, w in enumerate(instance.weights)) for j in range(n)]
           for i in range(n)]
    base = tuple(sum(lo) for lo in lows)
    radix = 1 + max((sum(max(vec[i][j][k] for j in range(n)) for i in range(n)) for k in range(d)),
                    default=0)
    if radix**d <= BITSET_LIMIT:
        code = [[sum(e[k] * radix**k for k in range(d)) for e in row] for row in vec]
        reach = {0: 1}
        for row in range(n):
            nxt: dict = {}
            for mask, bits in reach.items():
                for j in range(n):
                    if not mask >> j & 1:
                        key = mask | 1 << j
                        nxt[key] = nxt.get(key, 0) | bits << code[row][j]
            reach = nxt
        bits = reach[(1 << n) - 1]
        out = set()
        while bits:
            low = bits & -bits
            e = low.bit_length() - 1
            bits ^= low
            y = []
            for k in range(d):
                e, r = divmod(e, radix)
                y.append(r + base[k])
            out.add(tuple(y))
        return out
    reach = {0: {(0,) * d}}
    for row in range(n):
        nxt = {}
        for mask, sums in reach.items():
            for j in range(n):
                if not mask >> j & 1:
                    e = vec[row][j]
                    nxt.setdefault(mask | 1 << j, set()).update(
                        tuple(a + b for a, b in zip(s, e)) for s in sums)
        reach = nxt
    return {tuple(a + b for a, b in zip(y, base)) for y in reach[(1 << n) - 1]}


def normalize_nonnegative(instance: Instance, objective: Objective | None = None):
    """Shift every weight by ``v = max(0, -min entry)``.

    Returns ``(instance', objective', v)``.  Each perfect matching has n
    edges, so projections move by ``n*v`` in every coordinate and the
    returned objective undoes that shift.
    """
    v = max(0, -instance.min_weight)
    if v == 0:
        return instance, objective, 0
    weights = tuple(tuple(tuple(e + v for e in row) for row in w) for w in instance.weights)
    shifted = Instance(instance.n, instance.d, weights)
    if objective is not None:
        objective = objective.shifted((-instance.n * v,) * instance.d)
    return shifted, objective, v

