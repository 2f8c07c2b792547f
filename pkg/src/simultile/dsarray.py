"""Doubly stochastic arrays with uniform marginals.

An ``n x m`` array is doubly stochastic here when every row sums to ``m`` and
every column sums to ``n``.  The minimum support size of such an array is
``n + m - gcd(n, m)``, both for nonnegative and for complex entries; this
module constructs arrays attaining it and checks the lower bound by
exhaustive search on small sizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import kernels
from .errors import InstanceTooLarge
from .numeric import ComplexField, cnum

__all__ = [
    "DSArray",
    "SupportPattern",
    "PatternSearchResult",
    "nw_minimal",
    "verify_marginals",
    "pattern_feasible",
    "solve_on_pattern",
    "min_support_search",
    "min_support_exhaustive",
    "min_support_formula",
]


@dataclass(frozen=True)
class SupportPattern:
    """A set of cells ``(i, j)`` of an ``n x m`` grid."""

    n: int
    m: int
    cells: frozenset

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("pattern dimensions must be positive")
        cells = frozenset((int(i), int(j)) for i, j in self.cells)
        for i, j in cells:
            if not (0 <= i < self.n and 0 <= j < self.m):
                raise ValueError(f"cell {(i, j)} outside a {self.n}x{self.m} grid")
        object.__setattr__(self, "cells", cells)

    def __len__(self):
        return len(self.cells)

    def sorted_cells(self) -> list[tuple[int, int]]:
        return sorted(self.cells)

    def components(self) -> list[tuple[set[int], set[int]]]:
        """Connected components of the bipartite row/column graph as ``(rows, cols)``."""
        parent = list(range(self.n + self.m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.cells:
            a, b = find(i), find(self.n + j)
            if a != b:
                parent[a] = b
        groups: dict[int, tuple[set[int], set[int]]] = {}
        for v in range(self.n + self.m):
            rows, cols = groups.setdefault(find(v), (set(), set()))
            if v < self.n:
                rows.add(v)
            else:
                cols.add(v - self.n)
        return list(groups.values())

    def is_forest(self) -> bool:
        return len(self.cells) == self.n + self.m - len(self.components())


class DSArray:
    """An ``n x m`` array of exact complex entries, row-major."""

    __slots__ = ("n", "m", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(cnum(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("array must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged array")
        object.__setattr__(self, "n", len(rows))
        object.__setattr__(self, "m", len(rows[0]))
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("DSArray is immutable")

    def __eq__(self, other):
        return isinstance(other, DSArray) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"DSArray({self.n}x{self.m}: {body})"

    def __getitem__(self, ij) -> ComplexField:
        i, j = ij
        return self.entries[i][j]

    @property
    def nonnegative(self) -> bool:
        return all(x.is_real() and x.re.sign() >= 0 for row in self.entries for x in row)

    def support(self) -> SupportPattern:
        cells = {(i, j) for i, row in enumerate(self.entries) for j, x in enumerate(row) if x}
        return SupportPattern(self.n, self.m, frozenset(cells))

    def row_sums(self) -> list[ComplexField]:
        return [sum(row, ComplexField(0)) for row in self.entries]

    def col_sums(self) -> list[ComplexField]:
        return [sum((row[j] for row in self.entries), ComplexField(0)) for j in range(self.m)]

    def to_lists(self) -> list[list[ComplexField]]:
        return [list(row) for row in self.entries]


def nw_minimal(n: int, m: int) -> DSArray:
    """Northwest-corner fill with supply ``m`` per row and demand ``n`` per column.

    When a row and a column are exhausted together both pointers advance,
    which is what brings the support down to ``n + m - gcd(n, m)``.
    """
    if n < 1 or m < 1:
        raise ValueError("dimensions must be positive")
    grid = [[0] * m for _ in range(n)]
    supply, demand = [m] * n, [n] * m
    i = j = 0
    while i < n and j < m:
        x = min(supply[i], demand[j])
        grid[i][j] = x
        supply[i] -= x
        demand[j] -= x
        row_done, col_done = supply[i] == 0, demand[j] == 0
        if row_done:
            i += 1
        if col_done:
            j += 1
    return DSArray(grid)


def verify_marginals(M: DSArray) -> bool:
    """Exact check that rows sum to ``m`` and columns sum to ``n``."""
    return (all(s == M.m for s in M.row_sums())
            and all(s == M.n for s in M.col_sums()))


def pattern_feasible(P: SupportPattern) -> bool:
    """Whether some complex array supported in ``P`` has uniform marginals.

    Decided per connected component: a component with ``a`` rows and ``b``
    columns carries total ``a*m`` by rows and ``b*n`` by columns, and any
    connected bipartite support can realise a balanced component.
    """
    for rows, cols in P.components():
        if len(rows) * P.m != len(cols) * P.n:
            return False
    return True


def _solve_rational(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """One solution of ``A x = b`` over the rationals (free variables set to 0), or None."""
    n_r = len(A)
    n_c = len(A[0]) if n_r else 0
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n_c):
        piv = next((i for i in range(r, n_r) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n_r):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][n_c] != 0 for i in range(r, n_r)):
        return None
    x = [Fraction(0)] * n_c
    for i, c in enumerate(pivots):
        x[c] = M[i][n_c]
    return x


def solve_on_pattern(P: SupportPattern) -> DSArray | None:
    """An exact rational array supported in ``P`` with uniform marginals, or None.

    Plain Gauss-Jordan elimination on the marginal equations; independent of
    the component criterion used by :func:`pattern_feasible`.
    """
    cells = P.sorted_cells()
    A = [[Fraction(0)] * len(cells) for _ in range(P.n + P.m)]
    for k, (i, j) in enumerate(cells):
        A[i][k] = Fraction(1)
        A[P.n + j][k] = Fraction(1)
    b = [Fraction(P.m)] * P.n + [Fraction(P.n)] * P.m
    x = _solve_rational(A, b)
    if x is None:
        return None
    grid = [[0] * P.m for _ in range(P.n)]
    for (i, j), v in zip(cells, x):
        grid[i][j] = v
    return DSArray(grid)


@dataclass(frozen=True)
class PatternSearchResult:
    size: int
    pattern: SupportPattern
    examined: int
    backend: str


def min_support_search(n: int, m: int, cap: int = 30, backend: str | None = None) -> PatternSearchResult:
    """Exhaustive minimum-support search over patterns of ``K_{n,m}``.

    Candidate sizes run upward from ``max(n, m)``; each size enumerates every
    pattern touching all rows and columns (up to interchanging columns) and
    keeps the first one passing the component criterion.
    """
    if n < 1 or m < 1:
        raise ValueError("dimensions must be positive")
    if n * m > cap:
        raise InstanceTooLarge(f"n*m = {n * m} exceeds cap {cap}")
    edges = [(i, j) for i in range(n) for j in range(m)]
    k, witness, examined = kernels.min_cover_search(
        n, m, edges, max(n, m), n * m, kernels.RULE_COMPONENT, m, n, backend=backend)
    if k < 0:
        raise AssertionError("full pattern is always feasible")
    pattern = SupportPattern(n, m, frozenset(edges[e] for e in witness))
    return PatternSearchResult(k, pattern, examined, backend or kernels.BACKEND)


def min_support_exhaustive(n: int, m: int, cap: int = 30) -> int:
    """Minimum support size of an ``n x m`` doubly stochastic array, by search."""
    return min_support_search(n, m, cap).size


def min_support_formula(n: int, m: int) -> int:
    return n + m - math.gcd(n, m)
