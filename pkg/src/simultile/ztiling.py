"""Simultaneous tilings of the integers by ``nZ`` and ``mZ``.

A finitely supported ``g: Z -> C`` tiles at levels ``(p, q)`` when every
residue class mod ``n`` carries total ``p`` and every residue class mod ``m``
carries total ``q``.  Summing over all of ``Z`` forces ``n*p = m*q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import kernels
from .dsarray import DSArray, _solve_rational
from .errors import BoundaryPoint, InstanceTooLarge, NotCoprime
from .numeric import ComplexField, FieldNum, cnum, fnum
from .sets import Interval
from .stepfn import Piece, PiecewiseFn

__all__ = [
    "ZFunction",
    "ZTilingResult",
    "ZSearchResult",
    "z_convolution_tiler",
    "verify_ztiling",
    "fold_mod",
    "crt_lift",
    "z_min_support_search",
    "z_min_support_detail",
    "restrict_fx",
    "support_integral",
    "lift_to_line",
]

_ZERO = ComplexField(0)


class ZFunction:
    """A finitely supported function on the integers; zero values are dropped."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = values.items() if isinstance(values, Mapping) else values
        vals = {}
        for t, v in items:
            v = cnum(v)
            if v:
                vals[int(t)] = v
        object.__setattr__(self, "values", dict(sorted(vals.items())))

    def __setattr__(self, name, value):
        raise AttributeError("ZFunction is immutable")

    @classmethod
    def from_sequence(cls, seq: Iterable, start: int = 0) -> ZFunction:
        return cls((start + i, v) for i, v in enumerate(seq))

    def __call__(self, t: int) -> ComplexField:
        return self.values.get(t, _ZERO)

    def __eq__(self, other):
        return isinstance(other, ZFunction) and self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values.items()))

    def __repr__(self):
        body = ", ".join(f"{t}: {v}" for t, v in self.values.items())
        return f"ZFunction({{{body}}})"

    def __len__(self):
        return len(self.values)

    def __add__(self, other: ZFunction) -> ZFunction:
        out = dict(self.values)
        for t, v in other.values.items():
            out[t] = out.get(t, _ZERO) + v
        return ZFunction(out)

    def support(self) -> list[int]:
        return list(self.values)

    def total(self) -> ComplexField:
        return sum(self.values.values(), _ZERO)

    def shift(self, s: int) -> ZFunction:
        return ZFunction((t + s, v) for t, v in self.values.items())


def _indicator_conv(a: int, b: int) -> list[int]:
    """Values of ``chi_a * chi_b`` on ``0 .. a+b-2``, where ``chi_k`` is the indicator of ``{0..k-1}``."""
    return [sum(1 for i in range(a) if 0 <= t - i < b) for t in range(a + b - 1)]


def z_convolution_tiler(n: int, m: int) -> ZFunction:
    """Tiler with support ``n + m - gcd(n, m)`` consecutive integers at levels ``(m, n)``.

    With ``d = gcd(n, m)``, the kernel ``h = d * (chi_{n/d} * chi_{m/d})``
    tiles by ``(n/d)Z`` and ``(m/d)Z`` at levels ``(m, n)``; stretching it by
    ``g(j + d*t) = h(t)`` for ``0 <= j < d`` keeps those levels.
    """
    if n < 1 or m < 1:
        raise ValueError("moduli must be positive")
    d = math.gcd(n, m)
    h = [d * v for v in _indicator_conv(n // d, m // d)]
    return ZFunction((j + d * t, v) for t, v in enumerate(h) for j in range(d))


@dataclass(frozen=True)
class ZTilingResult:
    """Outcome of :func:`verify_ztiling`; ``witness`` and ``progression`` are set on failure."""

    ok: bool
    p: ComplexField | None = None
    q: ComplexField | None = None
    witness: int | None = None
    progression: int | None = None
    found: ComplexField | None = None
    expected: ComplexField | None = None

    @property
    def status(self) -> str:
        return "Tiling" if self.ok else "Failed"


def _class_sums(g: ZFunction, n: int) -> list[ComplexField]:
    sums = [_ZERO] * n
    for t, v in g.values.items():
        sums[t % n] = sums[t % n] + v
    return sums


def verify_ztiling(g: ZFunction, n: int, m: int) -> ZTilingResult:
    """Check that ``g`` tiles by ``nZ`` and ``mZ``; report the levels or a failing residue."""
    if n < 1 or m < 1:
        raise ValueError("moduli must be positive")
    levels = []
    for N in (n, m):
        sums = _class_sums(g, N)
        for t in range(1, N):
            if sums[t] != sums[0]:
                return ZTilingResult(False, witness=t, progression=N, found=sums[t], expected=sums[0])
        levels.append(sums[0])
    p, q = levels
    total = g.total()
    if not (total == p * n == q * m):
        raise AssertionError(f"level identity broken: sum {total}, n*p {p * n}, m*q {q * m}")
    return ZTilingResult(True, p, q)


def fold_mod(g: ZFunction, N: int) -> tuple[ComplexField, ...]:
    """``h(t) = sum_k g(t + k*N)`` for ``t`` in ``0 .. N-1``."""
    if N < 1:
        raise ValueError("period must be positive")
    return tuple(_class_sums(g, N))


def crt_lift(h, n: int, m: int) -> DSArray:
    """Place ``h(t)`` at cell ``(t mod n, t mod m)`` of an ``n x m`` array."""
    if math.gcd(n, m) != 1:
        raise NotCoprime(f"gcd({n}, {m}) = {math.gcd(n, m)}")
    h = [cnum(v) for v in h]
    if len(h) != n * m:
        raise ValueError(f"expected a vector of length {n * m}, got {len(h)}")
    grid = [[_ZERO] * m for _ in range(n)]
    for t, v in enumerate(h):
        grid[t % n][t % m] = v
    return DSArray(grid)


@dataclass(frozen=True)
class ZSearchResult:
    size: int
    positions: tuple[int, ...]
    tiling: ZFunction
    examined: int
    backend: str


def z_min_support_detail(n: int, m: int, cap: int = 36, backend: str | None = None) -> ZSearchResult:
    """Exhaustive search for the smallest tiling support within one period ``Z_L``.

    Position ``t`` of ``Z_L`` is the cell ``(t mod n, t mod m)``; a set of
    positions carries a tiling at levels ``(m, n)`` iff the progression-sum
    equations are consistent, which the kernel decides by comparing exact
    integer ranks.  Levels are normalized to ``(m, n)`` since any nonzero
    tiling's levels are proportional to it.  The returned tiling is solved
    exactly on the winning positions and re-verified.
    """
    if n < 1 or m < 1:
        raise ValueError("moduli must be positive")
    L = n * m // math.gcd(n, m)
    if L > cap:
        raise InstanceTooLarge(f"lcm({n}, {m}) = {L} exceeds cap {cap}")
    by_cell = sorted(((t % n, t % m), t) for t in range(L))
    edges = [cell for cell, _ in by_cell]
    k, witness, examined = kernels.min_cover_search(
        n, m, edges, max(n, m), L, kernels.RULE_RANK, m, n, backend=backend)
    if k < 0:
        raise AssertionError("the full period always carries a tiling")
    positions = tuple(sorted(by_cell[e][1] for e in witness))
    A = [[Fraction(0)] * k for _ in range(n + m)]
    for col, t in enumerate(positions):
        A[t % n][col] = Fraction(1)
        A[n + t % m][col] = Fraction(1)
    x = _solve_rational(A, [Fraction(m)] * n + [Fraction(n)] * m)
    g = ZFunction(zip(positions, x))
    res = verify_ztiling(g, n, m)
    if not (res.ok and len(g) == k):
        raise AssertionError(f"kernel witness {positions} does not carry a full-support tiling")
    return ZSearchResult(k, positions, g, examined, backend or kernels.BACKEND)


def z_min_support_search(n: int, m: int, cap: int = 36) -> int:
    """Minimum support size of a nonzero simultaneous tiling of ``Z`` by ``nZ`` and ``mZ``."""
    return z_min_support_detail(n, m, cap).size


def restrict_fx(f: PiecewiseFn, x) -> ZFunction:
    """The integer function ``t -> f(x + t)``; ``x + Z`` must miss every breakpoint."""
    x = fnum(x)
    bad = sorted({math.floor(b - x) for b in f.breakpoints()
                  if b - x == math.floor(b - x)})
    if bad:
        raise BoundaryPoint(x, bad)
    vals = {}
    for p in f.pieces:
        for t in range(math.ceil(p.lo - x), math.ceil(p.hi - x)):
            vals[t] = p.at(x + t)
    return ZFunction(vals)


def _frac(x: FieldNum) -> FieldNum:
    return x - math.floor(x)


def _generic_point(f: PiecewiseFn, a: FieldNum, b: FieldNum) -> FieldNum:
    """A point of ``(a, b)`` where no affine piece of ``f`` vanishes on ``x + Z``."""
    affine = [p for p in f.pieces if p.c1]
    k = 2
    while True:
        for j in range(1, k):
            x = a + (b - a) * Fraction(j, k)
            ok = True
            for p in affine:
                for t in range(math.ceil(p.lo - x), math.ceil(p.hi - x)):
                    if not p.at(x + t):
                        ok = False
            if ok:
                return x
        k += 1


def support_integral(f: PiecewiseFn) -> FieldNum:
    """``integral_0^1 |supp f_x| dx`` computed cell by cell, checked against ``mes(supp f)``.

    The unit interval is cut at the fractional parts of all breakpoints;
    ``|supp f_x|`` is constant on each open cell, so one sample per cell
    suffices.
    """
    cuts = sorted({FieldNum(0), FieldNum(1), *(_frac(b) for b in f.breakpoints())})
    total = FieldNum(0)
    for a, b in zip(cuts, cuts[1:]):
        x = _generic_point(f, a, b)
        total = total + (b - a) * len(restrict_fx(f, x))
    expected = f.support().measure()
    if total != expected:
        raise AssertionError(f"support integral {total} differs from support measure {expected}")
    return total


def lift_to_line(g: ZFunction) -> PiecewiseFn:
    """Step function ``f = sum_t g(t) 1_[t, t+1)``, so ``f(x + t) = g(t)`` for ``x`` in ``[0, 1)``."""
    return PiecewiseFn(Piece(Interval(t, t + 1), v) for t, v in g.values.items())
