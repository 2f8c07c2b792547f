"""Finitely supported piecewise-affine functions and the simultaneous tiling verifier.

A :class:`PiecewiseFn` is ``c0 + c1*x`` on each of finitely many disjoint
half-open intervals and zero elsewhere.  Its periodization ``pi_L(f)`` is a
finite sum because the support is bounded, so :func:`project_fn` computes it
exactly and :func:`verify_tiling` compares it against the requested level on
every cell of a common refinement.  Equality is demanded everywhere except at
cell boundaries, which is what "almost everywhere" means for such functions.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AmbientMismatch, NonPositiveModulus
from .numeric import ComplexField, FieldNum, cnum, fnum, reduce_mod
from .sets import ElementarySet, Interval

__all__ = [
    "Piece",
    "PiecewiseFn",
    "CirclePiecewiseFn",
    "TilingCertificate",
    "LevelCheck",
    "fn_combine",
    "translate",
    "project_fn",
    "verify_tiling",
    "integral",
    "check_level_consistency",
    "convolution_tiler",
]

_ZERO = ComplexField(0)


@dataclass(frozen=True)
class Piece:
    """``c0 + c1*x`` on ``interval``."""

    interval: Interval
    c0: ComplexField
    c1: ComplexField = _ZERO

    @property
    def lo(self) -> FieldNum:
        return self.interval.lo

    @property
    def hi(self) -> FieldNum:
        return self.interval.hi

    def at(self, x) -> ComplexField:
        return self.c0 + self.c1 * x

    def is_zero(self) -> bool:
        return not self.c0 and not self.c1


def _sweep(segments: Iterable[tuple[FieldNum, FieldNum, ComplexField, ComplexField]]) -> list[Piece]:
    """Sum possibly overlapping affine segments into disjoint pieces."""
    events: dict[FieldNum, list] = {}
    for lo, hi, c0, c1 in segments:
        if not lo < hi:
            continue
        e = events.setdefault(lo, [_ZERO, _ZERO])
        e[0] = e[0] + c0
        e[1] = e[1] + c1
        e = events.setdefault(hi, [_ZERO, _ZERO])
        e[0] = e[0] - c0
        e[1] = e[1] - c1
    keys = sorted(events)
    out: list[Piece] = []
    c0 = c1 = _ZERO
    for a, b in zip(keys, keys[1:]):
        c0 = c0 + events[a][0]
        c1 = c1 + events[a][1]
        if c0 or c1:
            out.append(Piece(Interval(a, b), c0, c1))
    return out


def _merge(pieces: Sequence[Piece]) -> tuple[Piece, ...]:
    out: list[Piece] = []
    for p in pieces:
        if p.is_zero():
            continue
        if out and out[-1].hi == p.lo and out[-1].c0 == p.c0 and out[-1].c1 == p.c1:
            out[-1] = Piece(Interval(out[-1].lo, p.hi), p.c0, p.c1)
        else:
            out.append(p)
    return tuple(out)


class PiecewiseFn:
    """A finitely supported piecewise-affine complex function on the line."""

    __slots__ = ("pieces", "_los")

    def __init__(self, pieces: Iterable[Piece | tuple] = ()):
        ps = []
        for p in pieces:
            if not isinstance(p, Piece):
                lo, hi, c0, *rest = p
                p = Piece(Interval(lo, hi), cnum(c0), cnum(rest[0]) if rest else _ZERO)
            ps.append(p)
        ps.sort(key=lambda p: p.lo)
        for a, b in zip(ps, ps[1:]):
            if b.lo < a.hi:
                raise ValueError(f"overlapping pieces {a.interval} and {b.interval}")
        object.__setattr__(self, "pieces", _merge(ps))
        object.__setattr__(self, "_los", [p.lo for p in self.pieces])

    def __setattr__(self, name, value):
        raise AttributeError("PiecewiseFn is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def indicator(cls, where: ElementarySet | Interval, value=1):
        parts = where.parts if isinstance(where, ElementarySet) else (where,)
        return cls(Piece(iv, cnum(value)) for iv in parts)

    # -- queries ----------------------------------------------------------
    def __bool__(self):
        return bool(self.pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseFn):
            return NotImplemented
        return type(self) is type(other) and self.pieces == other.pieces and \
            getattr(self, "modulus", None) == getattr(other, "modulus", None)

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        body = ", ".join(f"{p.interval}: {p.c0}" + (f" + ({p.c1})x" if p.c1 else "")
                         for p in self.pieces)
        return f"{type(self).__name__}({body or '0'})"

    def __call__(self, x) -> ComplexField:
        x = fnum(x)
        i = bisect.bisect_right(self._los, x) - 1
        if i >= 0 and x < self.pieces[i].hi:
            return self.pieces[i].at(x)
        return _ZERO

    def is_piecewise_constant(self) -> bool:
        return all(not p.c1 for p in self.pieces)

    def support(self) -> ElementarySet:
        """Union of the piece intervals (equal to supp f up to finitely many points)."""
        return ElementarySet([p.interval for p in self.pieces])

    def breakpoints(self) -> list[FieldNum]:
        pts = set()
        for p in self.pieces:
            pts.add(p.lo)
            pts.add(p.hi)
        return sorted(pts)

    # -- algebra ----------------------------------------------------------
    def __add__(self, other):
        return fn_combine(self, other, "add")

    def __sub__(self, other):
        return fn_combine(self, other, "sub")

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = cnum(c)
        return type(self)._rebuild(self, [Piece(p.interval, p.c0 * c, p.c1 * c) for p in self.pieces])

    def restrict(self, where: ElementarySet):
        """``f`` times the indicator of ``where``."""
        segs = []
        for p in self.pieces:
            for iv in where.parts:
                lo, hi = max(p.lo, iv.lo), min(p.hi, iv.hi)
                if lo < hi:
                    segs.append(Piece(Interval(lo, hi), p.c0, p.c1))
        return type(self)._rebuild(self, segs)

    @staticmethod
    def _rebuild(template, pieces):
        return PiecewiseFn(pieces)

    def cells(self, domain: ElementarySet) -> list[tuple[FieldNum, FieldNum, ComplexField, ComplexField]]:
        """Refine ``domain`` by the breakpoints; return ``(a, b, c0, c1)`` per cell."""
        bps = self.breakpoints()
        out = []
        for iv in domain.parts:
            i = bisect.bisect_right(bps, iv.lo)
            j = bisect.bisect_left(bps, iv.hi)
            cuts = [iv.lo, *bps[i:j], iv.hi]
            for a, b in zip(cuts, cuts[1:]):
                k = bisect.bisect_right(self._los, a) - 1
                if k >= 0 and a < self.pieces[k].hi:
                    p = self.pieces[k]
                    out.append((a, b, p.c0, p.c1))
                else:
                    out.append((a, b, _ZERO, _ZERO))
        return out


class CirclePiecewiseFn(PiecewiseFn):
    """A piecewise-affine function on ``T_L`` stored on the fundamental domain ``[0, L)``."""

    __slots__ = ("modulus",)

    def __init__(self, modulus, pieces: Iterable[Piece | tuple] = ()):
        object.__setattr__(self, "modulus", fnum(modulus))
        super().__init__(pieces)
        for p in self.pieces:
            if p.lo < 0 or p.hi > self.modulus:
                raise ValueError(f"piece {p.interval} leaves [0, {self.modulus})")

    @staticmethod
    def _rebuild(template, pieces):
        return CirclePiecewiseFn(template.modulus, pieces)

    def __call__(self, x):
        return super().__call__(reduce_mod(x, self.modulus)[0])

    def __add__(self, other):
        if not isinstance(other, CirclePiecewiseFn) or other.modulus != self.modulus:
            raise ValueError("can only add circle functions with the same modulus")
        return CirclePiecewiseFn(self.modulus, _sweep(
            [(p.lo, p.hi, p.c0, p.c1) for p in self.pieces]
            + [(p.lo, p.hi, p.c0, p.c1) for p in other.pieces]))

    def __sub__(self, other):
        return self + (-other)

    def __hash__(self):
        return hash((self.modulus, self.pieces))

    def support(self) -> ElementarySet:
        return ElementarySet([p.interval for p in self.pieces], self.modulus)

    def as_line(self) -> PiecewiseFn:
        return PiecewiseFn(self.pieces)

    @classmethod
    def constant(cls, modulus, value, where: ElementarySet | None = None):
        modulus = fnum(modulus)
        where = ElementarySet.full_circle(modulus) if where is None else where
        return cls(modulus, [Piece(iv, cnum(value)) for iv in where.parts])


def fn_combine(f: PiecewiseFn, g: PiecewiseFn, op: str = "add") -> PiecewiseFn:
    if op not in ("add", "sub"):
        raise ValueError(f"unknown op {op!r}")
    sgn = 1 if op == "add" else -1
    segs = [(p.lo, p.hi, p.c0, p.c1) for p in f.pieces]
    segs += [(p.lo, p.hi, p.c0 * sgn, p.c1 * sgn) for p in g.pieces]
    return PiecewiseFn(_sweep(segs))


def translate(f: PiecewiseFn, t) -> PiecewiseFn:
    """``g(x) = f(x - t)``."""
    t = fnum(t)
    return PiecewiseFn(Piece(p.interval.shift(t), p.c0 - p.c1 * t, p.c1) for p in f.pieces)


def project_fn(f: PiecewiseFn, L) -> CirclePiecewiseFn:
    """The periodization ``sum_k f(x - kL)`` as a function on ``T_L``."""
    L = fnum(L)
    if L.sign() <= 0:
        raise NonPositiveModulus(f"modulus must be positive, got {L}")
    segs = []
    for p in f.pieces:
        k = math.floor(p.lo / L)
        while L * k < p.hi:
            lo = max(p.lo, L * k)
            hi = min(p.hi, L * (k + 1))
            if lo < hi:
                shift = L * k
                segs.append((lo - shift, hi - shift, p.c0 + p.c1 * shift, p.c1))
            k += 1
    return CirclePiecewiseFn(L, _sweep(segs))


def integral(f: PiecewiseFn) -> ComplexField:
    total = _ZERO
    for p in f.pieces:
        total = total + p.c0 * (p.hi - p.lo) + p.c1 * ((p.hi * p.hi - p.lo * p.lo) / 2)
    return total


@dataclass(frozen=True)
class Failure:
    side: str
    witness: FieldNum
    found: ComplexField
    expected: ComplexField


@dataclass(frozen=True)
class TilingCertificate:
    """Outcome of :func:`verify_tiling`.

    ``status`` is ``"ExactTiling"`` when both full circles were verified,
    ``"PartialTiling"`` when verification succeeded on proper subdomains and
    ``"Failed"`` otherwise, in which case ``failure`` carries a witness point.
    """

    modulus_a: FieldNum
    modulus_b: FieldNum
    level_p: ComplexField
    level_q: ComplexField
    verified_domain_a: ElementarySet
    verified_domain_b: ElementarySet
    status: str
    exceptional_points_a: tuple[FieldNum, ...] = ()
    exceptional_points_b: tuple[FieldNum, ...] = ()
    failure: Failure | None = None

    @property
    def ok(self) -> bool:
        return self.status != "Failed"

    @property
    def exceptional_points(self) -> tuple[FieldNum, ...]:
        return self.exceptional_points_a + self.exceptional_points_b


def _check_level(F: CirclePiecewiseFn, domain: ElementarySet, level: ComplexField, side: str):
    exceptional = []
    for a, b, c0, c1 in F.cells(domain):
        exceptional.append(a)
        if c1 or c0 != level:
            x = a + (b - a) / 2
            if c0 + c1 * x == level:
                x = a + (b - a) / 4
            return Failure(side, x, c0 + c1 * x, level), ()
    return None, tuple(sorted(set(exceptional)))


def verify_tiling(f: PiecewiseFn, alpha, beta, p, q,
                  domain_a: ElementarySet | None = None,
                  domain_b: ElementarySet | None = None) -> TilingCertificate:
    """Check ``pi_alpha(f) = p`` on ``domain_a`` and ``pi_beta(f) = q`` on ``domain_b``.

    Domains default to the full circles.  Values are compared symbolically on
    every refinement cell, so a certificate is never issued by sampling.
    """
    alpha, beta, p, q = fnum(alpha), fnum(beta), cnum(p), cnum(q)
    full_a = domain_a is None or domain_a.is_full()
    full_b = domain_b is None or domain_b.is_full()
    da = ElementarySet.full_circle(alpha) if domain_a is None else domain_a
    db = ElementarySet.full_circle(beta) if domain_b is None else domain_b
    if da.ambient != alpha or db.ambient != beta:
        raise AmbientMismatch("verification domains must live on T_alpha and T_beta")
    fail, exc_a = _check_level(project_fn(f, alpha), da, p, "alpha")
    if fail is None:
        fail, exc_b = _check_level(project_fn(f, beta), db, q, "beta")
    else:
        exc_b = ()
    if fail is not None:
        status = "Failed"
    elif full_a and full_b:
        status = "ExactTiling"
    else:
        status = "PartialTiling"
    return TilingCertificate(alpha, beta, p, q, da, db, status, exc_a, exc_b, fail)


@dataclass(frozen=True)
class LevelCheck:
    consistent: bool
    p_alpha: ComplexField
    q_beta: ComplexField
    integral: ComplexField


def check_level_consistency(f: PiecewiseFn, alpha, beta, p, q) -> LevelCheck:
    """Integrability forces ``integral(f) = p*alpha = q*beta``; report all three."""
    pa = cnum(p) * fnum(alpha)
    qb = cnum(q) * fnum(beta)
    total = integral(f)
    return LevelCheck(total == pa and total == qb, pa, qb, total)


def convolution_tiler(alpha, beta, lam=1) -> PiecewiseFn:
    """The trapezoid ``lam * (1_[0,alpha) * 1_[0,beta))``; tiles at levels ``lam*(beta, alpha)``."""
    alpha, beta, lam = fnum(alpha), fnum(beta), cnum(lam)
    if alpha.sign() <= 0 or beta.sign() <= 0:
        raise NonPositiveModulus("alpha and beta must be positive")
    lo, hi = min(alpha, beta), max(alpha, beta)
    zero = ComplexField(0)
    pieces = [Piece(Interval(0, lo), zero, lam)]
    if lo < hi:
        pieces.append(Piece(Interval(lo, hi), lam * lo, zero))
    pieces.append(Piece(Interval(hi, alpha + beta), lam * (alpha + beta), -lam))
    return PiecewiseFn(pieces)
