"""Effective shift searches over irrational rotations.

Density of ``{k*step mod L}`` for rationally independent ``step, L`` says a
suitable integer multiplier always exists but gives no bound on it.  These
functions scan multipliers in increasing order under a doubling budget and
re-verify every answer with exact arithmetic before returning it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PlacementImpossible, SearchExhausted
from .numeric import FieldNum, fnum
from .sets import ElementarySet, Interval, arc

__all__ = ["ShiftSearchBudget", "find_shift", "find_disjoint_system", "DEFAULT_BUDGET"]


@dataclass(frozen=True)
class ShiftSearchBudget:
    """Scan ``max_k`` multipliers, then double the window up to ``doublings`` times."""

    max_k: int = 4096
    doublings: int = 6

    def __post_init__(self):
        if self.max_k < 1:
            raise ValueError("max_k must be at least 1")
        if self.doublings < 0:
            raise ValueError("doublings must be nonnegative")

    @property
    def total(self) -> int:
        return self.max_k * 2 ** self.doublings


DEFAULT_BUDGET = ShiftSearchBudget()


def _as_circle_set(J, L) -> ElementarySet:
    if isinstance(J, ElementarySet):
        if J.ambient != L:
            raise ValueError(f"target must live on T_{L}")
        return J
    return ElementarySet([J], L)


def _windows(budget: ShiftSearchBudget):
    start, width = 0, budget.max_k
    for _ in range(budget.doublings + 1):
        yield start, start + width
        start += width
        width *= 2


def _float_filter(U: Interval, target: ElementarySet, step: FieldNum, L: FieldNum):
    """Cheap necessary condition for ``pi_L(U + k*step)`` to lie in ``target``.

    Works in floating point with every target arc widened by a margin far
    above the rounding error, so it only rejects shifts that are clearly
    wrong; survivors are decided exactly by the caller.
    """
    lo0, ln, st, Lf = float(U.lo), float(U.length), float(step), float(L)
    margin = 1e-7 * (1.0 + abs(lo0) + abs(st) + Lf)
    boxes = []
    for iv in target.parts:
        a, b = float(iv.lo), float(iv.hi)
        for off in (-Lf, 0.0, Lf):
            boxes.append((a + off - margin, b + off + margin))

    def inside(a, b):
        return any(x <= a and b <= y for x, y in boxes)

    def maybe(k: int) -> bool:
        scale = abs(k * st)
        if scale * 1e-12 > margin:
            return True  # precision too low to say anything
        x = math.fmod(lo0 + k * st, Lf)
        if x < 0:
            x += Lf
        end = x + ln
        if end <= Lf:
            return inside(x, end)
        return inside(x, Lf) and inside(0.0, end - Lf)

    return maybe


def find_shift(U: Interval, J, step, L, budget: ShiftSearchBudget = DEFAULT_BUDGET,
               k_min: int = 0) -> int:
    """Smallest ``k >= k_min`` with ``pi_L(U + k*step)`` contained in ``J``.

    ``J`` is an arc of ``T_L`` given as an :class:`Interval` in ``[0, L]`` or
    as a circle :class:`ElementarySet` (which may wrap through the origin).
    """
    step, L = fnum(step), fnum(L)
    target = _as_circle_set(J, L)
    if not U.length < target.measure():
        raise PlacementImpossible(
            f"interval of length {U.length} cannot fit in an arc of length {target.measure()}")
    maybe = _float_filter(U, target, step, L)
    for lo, hi in _windows(budget):
        for k in range(k_min + lo, k_min + hi):
            if not maybe(k):
                continue
            img = arc(L, U.lo + step * k, U.length)
            if img.issubset(target):
                return k
    raise SearchExhausted(f"no shift in [{k_min}, {k_min + budget.total}) places {U} inside {target}")


def _free_capacity(free: ElementarySet, gamma: FieldNum) -> int:
    """How many disjoint arcs of length ``gamma`` the free part of the circle can still host."""
    parts = list(free.parts)
    L = free.ambient
    # an arc through the origin is split in storage; glue it back
    if len(parts) >= 2 and parts[0].lo == 0 and parts[-1].hi == L:
        glued = parts[-1].length + parts[0].length
        lengths = [glued] + [p.length for p in parts[1:-1]]
    elif len(parts) == 1 and parts[0].lo == 0 and parts[0].hi == L:
        lengths = [L]
    else:
        lengths = [p.length for p in parts]
    return sum(math.floor(ln / gamma) for ln in lengths)


def find_disjoint_system(count: int, gamma, step, L,
                         budget: ShiftSearchBudget = DEFAULT_BUDGET) -> list[int]:
    """Multipliers ``m_1..m_count`` whose arcs ``[m*step, m*step + gamma)`` are disjoint in ``T_L``.

    Greedy first fit over ``m = 0, 1, 2, ...``; a candidate is accepted only if
    the circle left over can still host the remaining arcs, so the greedy
    choice never paints itself into a corner.
    """
    gamma, step, L = fnum(gamma), fnum(step), fnum(L)
    if count < 1:
        raise ValueError("count must be positive")
    if gamma.sign() <= 0:
        raise PlacementImpossible("gamma must be positive")
    if not gamma * count < L:
        raise PlacementImpossible(f"{count} disjoint arcs of length {gamma} do not fit in T_{L}")
    chosen: list[int] = []
    claimed = ElementarySet.empty(L)
    for lo, hi in _windows(budget):
        for k in range(lo, hi):
            img = arc(L, step * k, gamma)
            if not img.isdisjoint(claimed):
                continue
            rest = claimed | img
            left = count - len(chosen) - 1
            if left and _free_capacity(rest.complement(), gamma) < left:
                continue
            chosen.append(k)
            claimed = rest
            if len(chosen) == count:
                return chosen
    raise SearchExhausted(f"found only {len(chosen)} of {count} disjoint arcs within budget")
