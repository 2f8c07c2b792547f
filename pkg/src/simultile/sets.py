"""Elementary sets: finite disjoint unions of half-open intervals.

Sets live either on the real line or on a circle ``T_L = R / L Z``; circle
sets are stored in fundamental-domain coordinates ``[0, L)`` and an arc that
crosses the origin is kept as two explicit parts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import AmbientMismatch, NonPositiveDelta, NonPositiveModulus
from .numeric import FieldNum, fnum, reduce_mod

__all__ = ["Interval", "ElementarySet", "LINE", "arc", "set_boolean", "measure",
           "project", "decompose_below", "fiber_count"]

LINE = None


@dataclass(frozen=True)
class Interval:
    """The half-open interval ``[lo, hi)``."""

    lo: FieldNum
    hi: FieldNum

    def __post_init__(self):
        object.__setattr__(self, "lo", fnum(self.lo))
        object.__setattr__(self, "hi", fnum(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi})")

    @property
    def length(self) -> FieldNum:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x < self.hi

    def shift(self, t) -> Interval:
        return Interval(self.lo + t, self.hi + t)

    def __str__(self):
        return f"[{self.lo}, {self.hi})"


def _normalize(parts: Iterable[Interval]) -> tuple[Interval, ...]:
    ordered = sorted(parts, key=lambda iv: iv.lo)
    out: list[Interval] = []
    for iv in ordered:
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return tuple(out)


class ElementarySet:
    """A finite union of disjoint half-open intervals on the line or a circle.

    ``ambient`` is ``None`` for the line and the modulus ``L`` for ``T_L``.
    """

    __slots__ = ("ambient", "parts")

    def __init__(self, parts: Iterable[Interval | tuple] = (), ambient=LINE):
        ivs = [p if isinstance(p, Interval) else Interval(*p) for p in parts]
        if ambient is not None:
            ambient = fnum(ambient)
            if ambient.sign() <= 0:
                raise NonPositiveModulus(f"circle modulus must be positive, got {ambient}")
            for iv in ivs:
                if iv.lo < 0 or iv.hi > ambient:
                    raise ValueError(f"{iv} leaves the fundamental domain [0, {ambient})")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "parts", _normalize(ivs))

    def __setattr__(self, name, value):
        raise AttributeError("ElementarySet is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def full_circle(cls, L) -> ElementarySet:
        L = fnum(L)
        return cls([Interval(0, L)], L)

    @classmethod
    def empty(cls, ambient=LINE) -> ElementarySet:
        return cls((), ambient)

    # -- basic queries ----------------------------------------------------
    @property
    def is_circle(self) -> bool:
        return self.ambient is not None

    def __bool__(self):
        return bool(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        if not isinstance(other, ElementarySet):
            return NotImplemented
        return self.ambient == other.ambient and self.parts == other.parts

    def __hash__(self):
        return hash((self.ambient, self.parts))

    def __repr__(self):
        where = "line" if self.ambient is None else f"T_{self.ambient}"
        body = " ∪ ".join(str(p) for p in self.parts) or "∅"
        return f"<ElementarySet on {where}: {body}>"

    def measure(self) -> FieldNum:
        total = FieldNum(0)
        for iv in self.parts:
            total = total + iv.length
        return total

    def contains(self, x) -> bool:
        if self.ambient is not None:
            x = reduce_mod(x, self.ambient)[0]
        return any(iv.contains(x) for iv in self.parts)

    def is_full(self) -> bool:
        return (self.ambient is not None and len(self.parts) == 1
                and self.parts[0].lo == 0 and self.parts[0].hi == self.ambient)

    def endpoints(self) -> list[FieldNum]:
        pts = []
        for iv in self.parts:
            pts.extend((iv.lo, iv.hi))
        return pts

    def bounds(self) -> tuple[FieldNum, FieldNum]:
        if not self.parts:
            raise ValueError("empty set has no bounds")
        return self.parts[0].lo, self.parts[-1].hi

    # -- boolean algebra --------------------------------------------------
    def _check(self, other: ElementarySet):
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")

    def union(self, other: ElementarySet) -> ElementarySet:
        self._check(other)
        return ElementarySet(self.parts + other.parts, self.ambient)

    def intersect(self, other: ElementarySet) -> ElementarySet:
        self._check(other)
        out = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo < hi:
                out.append(Interval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return ElementarySet(out, self.ambient)

    def subtract(self, other: ElementarySet) -> ElementarySet:
        self._check(other)
        out = []
        cuts = other.parts
        j = 0
        for iv in self.parts:
            lo = iv.lo
            while j < len(cuts) and cuts[j].hi <= lo:
                j += 1
            k = j
            while k < len(cuts) and cuts[k].lo < iv.hi:
                if cuts[k].lo > lo:
                    out.append(Interval(lo, cuts[k].lo))
                lo = max(lo, cuts[k].hi)
                if lo >= iv.hi:
                    break
                k += 1
            if lo < iv.hi:
                out.append(Interval(lo, iv.hi))
        return ElementarySet(out, self.ambient)

    __or__ = union
    __and__ = intersect
    __sub__ = subtract

    def complement(self) -> ElementarySet:
        if self.ambient is None:
            raise ValueError("complement on the line has infinite measure")
        return ElementarySet.full_circle(self.ambient) - self

    def issubset(self, other: ElementarySet) -> bool:
        return not (self - other)

    def isdisjoint(self, other: ElementarySet) -> bool:
        return not (self & other)

    def translate(self, t) -> ElementarySet:
        if self.ambient is not None:
            raise ValueError("translate circle sets through project()")
        return ElementarySet([iv.shift(t) for iv in self.parts])

    def left_portion(self, amount) -> ElementarySet:
        """The leftmost subset of measure ``amount`` (in coordinate order)."""
        amount = fnum(amount)
        out = []
        for iv in self.parts:
            if amount.sign() <= 0:
                break
            if iv.length <= amount:
                out.append(iv)
                amount = amount - iv.length
            else:
                out.append(Interval(iv.lo, iv.lo + amount))
                amount = FieldNum(0)
        return ElementarySet(out, self.ambient)

    def to_circle(self, L) -> ElementarySet:
        return project(self, L)


def arc(L, start, length) -> ElementarySet:
    """The arc ``[start, start + length)`` in ``T_L``, split at the origin if needed."""
    L, length = fnum(L), fnum(length)
    if length >= L:
        return ElementarySet.full_circle(L)
    if length.sign() <= 0:
        return ElementarySet.empty(L)
    r0, _ = reduce_mod(start, L)
    end = r0 + length
    if end <= L:
        return ElementarySet([Interval(r0, end)], L)
    return ElementarySet([Interval(r0, L), Interval(0, end - L)], L)


def set_boolean(X: ElementarySet, Y: ElementarySet, op: str) -> ElementarySet:
    ops = {"union": X.union, "intersect": X.intersect, "subtract": X.subtract}
    try:
        return ops[op](Y)
    except KeyError:
        raise ValueError(f"unknown boolean op {op!r}") from None


def measure(X: ElementarySet) -> FieldNum:
    return X.measure()


def project(X: ElementarySet, L) -> ElementarySet:
    """Image of a line set under the canonical projection onto ``T_L``."""
    if X.ambient is not None:
        raise ValueError("project() expects a set on the line")
    L = fnum(L)
    pieces: list[Interval] = []
    for iv in X.parts:
        pieces.extend(arc(L, iv.lo, iv.length).parts)
    return ElementarySet(pieces, L)


def decompose_below(X: ElementarySet, delta) -> list[ElementarySet]:
    """Split every part into ``floor(len/delta) + 1`` equal pieces, left to right.

    Each returned piece is a single interval of length strictly below ``delta``.
    """
    delta = fnum(delta)
    if delta.sign() <= 0:
        raise NonPositiveDelta(f"delta must be positive, got {delta}")
    out = []
    for iv in X.parts:
        count = math.floor(iv.length / delta) + 1
        step = iv.length / count
        for i in range(count):
            lo = iv.lo + step * i
            hi = iv.hi if i == count - 1 else iv.lo + step * (i + 1)
            out.append(ElementarySet([Interval(lo, hi)], X.ambient))
    return out


def fiber_count(X: ElementarySet, L, a) -> int:
    """Number of points of ``X`` in the coset ``a + L Z``."""
    if X.ambient is not None:
        raise ValueError("fiber_count() expects a set on the line")
    L, a = fnum(L), fnum(a)
    if L.sign() <= 0:
        raise NonPositiveModulus(f"modulus must be positive, got {L}")
    total = 0
    for iv in X.parts:
        total += math.ceil((iv.hi - a) / L) - math.ceil((iv.lo - a) / L)
    return total
