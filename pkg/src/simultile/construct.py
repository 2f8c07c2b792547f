"""Constructions of functions with prescribed projections onto two circles.

Everything here works for a pair of rationally independent moduli
``alpha, beta`` (defaults ``1`` and ``sqrt(d)``).  Pieces are lifted from a
circle to the line and pushed along ``alpha Z`` (or ``beta Z``) until their
image on the other circle lands inside a target arc; the shift is found by
:func:`kronecker.find_shift` and every placement is re-checked exactly.

The infinite alternating scheme is run for finitely many rounds and returned
as a :class:`TruncatedTiling` together with the exact circle domains on
which its projections are guaranteed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .dsarray import DSArray, nw_minimal
from .errors import GammaTooLarge, NotCoprime, PlacementImpossible
from .kronecker import DEFAULT_BUDGET, ShiftSearchBudget, find_disjoint_system, find_shift
from .numeric import SQRT, ComplexField, FieldNum, cnum, fnum, rationally_independent
from .sets import ElementarySet, Interval, arc, decompose_below, project
from .stepfn import (CirclePiecewiseFn, PiecewiseFn, TilingCertificate, project_fn,
                     translate, verify_tiling)

__all__ = [
    "PlacementResult",
    "TruncatedTiling",
    "FNSystem",
    "FNTiling",
    "place_injective",
    "place_with_values",
    "alternating_scheme",
    "thm_a31_truncated",
    "fn_interval_system",
    "fn_tiler",
    "thm_a25_truncated",
    "thm_a26_truncated",
]

_ZERO = ComplexField(0)


@dataclass(frozen=True)
class PlacementResult:
    """A line set ``U`` mapped one-to-one onto ``A`` by the ``alpha`` projection.

    ``shifts`` lists ``(piece, k)``: the circle piece and the multiple of
    ``alpha`` it was moved by.
    """

    U: ElementarySet
    f: PiecewiseFn | None
    image_a: ElementarySet
    image_b: ElementarySet
    shifts: tuple = ()

    @property
    def right_end(self) -> FieldNum | None:
        return self.U.bounds()[1] if self.U else None


def _check_moduli(alpha, beta):
    alpha, beta = fnum(alpha), fnum(beta)
    if not rationally_independent(alpha, beta):
        raise ValueError(f"moduli {alpha} and {beta} are rationally dependent")
    return alpha, beta


def place_injective(A: ElementarySet, J, r=0, alpha=1, beta=SQRT,
                    budget: ShiftSearchBudget = DEFAULT_BUDGET) -> PlacementResult:
    """Lift ``A`` (on ``T_alpha``) to ``U`` in ``(r, +inf)`` with ``pi_beta(U)`` inside ``J``.

    ``A`` is cut into pieces shorter than ``min(len J, alpha) / 2``; each is
    lifted to ``[0, alpha)`` and shifted by the first multiple of ``alpha``
    that lands its ``beta`` image in ``J`` while keeping it to the right of
    everything placed so far.
    """
    return place_with_values(A, None, J, r, alpha, beta, budget)


def place_with_values(A: ElementarySet, phi: CirclePiecewiseFn | None, J, r=0, alpha=1,
                      beta=SQRT, budget: ShiftSearchBudget = DEFAULT_BUDGET) -> PlacementResult:
    """As :func:`place_injective`, and also transport ``phi`` so that ``pi_alpha(f) = phi`` on ``A``."""
    alpha, beta = _check_moduli(alpha, beta)
    r = fnum(r)
    if A.ambient != alpha:
        raise ValueError(f"A must live on T_{alpha}")
    target = J if isinstance(J, ElementarySet) else ElementarySet([J], beta)
    if target.ambient != beta or not target:
        raise PlacementImpossible("target must be a nonempty arc of T_beta")
    if not A:
        return PlacementResult(ElementarySet.empty(), None if phi is None else PiecewiseFn.zero(),
                               ElementarySet.empty(alpha), ElementarySet.empty(beta))
    delta = min(target.measure(), alpha) / 2
    line_phi = None if phi is None else phi.restrict(A).as_line()
    threshold = r
    parts, shifts, pieces = [], [], []
    for piece in decompose_below(A, delta):
        (iv,) = piece.parts
        # first k with iv.lo + k*alpha strictly right of the threshold
        k_min = max(math.floor((threshold - iv.lo) / alpha) + 1, 0)
        k = find_shift(iv, target, alpha, beta, budget, k_min=k_min)
        t = alpha * k
        placed = iv.shift(t)
        parts.append(placed)
        shifts.append((iv, k))
        threshold = placed.hi
        if line_phi is not None:
            pieces.extend(translate(line_phi.restrict(ElementarySet([iv])), t).pieces)
    U = ElementarySet(parts)
    image_a, image_b = project(U, alpha), project(U, beta)
    if image_a != A or U.measure() != A.measure() or not image_b.issubset(target):
        raise AssertionError("placement postconditions failed")
    f = None if phi is None else PiecewiseFn(pieces)
    return PlacementResult(U, f, image_a, image_b, tuple(shifts))


@dataclass(frozen=True)
class TruncatedTiling:
    """Finite stage of an infinite construction.

    ``pi_alpha(f)`` is guaranteed on ``covered_a`` and ``pi_beta(f)`` on
    ``covered_b``; outside them the projections are unconstrained.
    ``support_measure`` is the exact measure of ``omega``, the union of all
    placed sets.
    """

    f: PiecewiseFn
    covered_a: ElementarySet
    covered_b: ElementarySet
    rounds: int
    support_measure: FieldNum
    omega: ElementarySet
    alpha: FieldNum
    beta: FieldNum
    p: ComplexField | None = None
    q: ComplexField | None = None
    parts: dict = field(default_factory=dict)

    def certificate(self) -> TilingCertificate:
        """Re-verify the declared levels on the covered domains with :func:`verify_tiling`."""
        if self.p is None or self.q is None:
            raise ValueError("no constant levels were declared for this construction")
        return verify_tiling(self.f, self.alpha, self.beta, self.p, self.q,
                             domain_a=self.covered_a, domain_b=self.covered_b)

    @property
    def residual_a(self) -> FieldNum:
        return self.alpha - self.covered_a.measure()

    @property
    def residual_b(self) -> FieldNum:
        return self.beta - self.covered_b.measure()


def _as_circle_fn(value, L, where: ElementarySet) -> CirclePiecewiseFn:
    if isinstance(value, CirclePiecewiseFn):
        if value.modulus != L:
            raise ValueError(f"function lives on T_{value.modulus}, expected T_{L}")
        return value
    return CirclePiecewiseFn.constant(L, value, where)


def _largest_part(X: ElementarySet) -> Interval:
    best = X.parts[0]
    for iv in X.parts[1:]:
        if iv.length > best.length:
            best = iv
    return best


def alternating_scheme(A: ElementarySet, B: ElementarySet, phi, psi, rounds: int, r=0,
                       alpha=1, beta=SQRT,
                       budget: ShiftSearchBudget = DEFAULT_BUDGET) -> TruncatedTiling:
    """Run ``rounds`` rounds of the alternating placement.

    Round ``n`` takes ``A_n`` as the left half (by measure) of what is left
    of ``A``, and ``B_n`` likewise for ``B``.  It places ``A_n`` with values
    ``phi - sum_{k<n} pi_alpha(h_k)`` into the part of ``B`` not yet used,
    then places ``B_n`` with values ``psi - sum_{k<=n} pi_beta(g_k)`` into
    the part of ``A`` not yet used.  The placed sets march to the right, so
    they are pairwise disjoint.
    """
    alpha, beta = _check_moduli(alpha, beta)
    if A.ambient != alpha or B.ambient != beta:
        raise ValueError("A and B must live on T_alpha and T_beta")
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    if rounds and (A.measure().sign() <= 0 or B.measure().sign() <= 0):
        raise PlacementImpossible("A and B must have positive measure")
    phi = _as_circle_fn(phi, alpha, A).restrict(A)
    psi = _as_circle_fn(psi, beta, B).restrict(B)
    rem_a, rem_b = A, B
    sum_h = CirclePiecewiseFn(alpha)
    sum_g = CirclePiecewiseFn(beta)
    f = PiecewiseFn.zero()
    omega_parts: list[Interval] = []
    threshold = fnum(r)
    for _ in range(rounds):
        a_n = rem_a.left_portion(rem_a.measure() / 2)
        b_n = rem_b.left_portion(rem_b.measure() / 2)

        res_u = place_with_values(a_n, (phi - sum_h).restrict(a_n), _largest_part(rem_b),
                                  threshold, alpha, beta, budget)
        threshold = res_u.right_end
        f = f + res_u.f
        sum_g = sum_g + project_fn(res_u.f, beta)
        omega_parts.extend(res_u.U.parts)
        rem_a = rem_a - a_n

        res_v = place_with_values(b_n, (psi - sum_g).restrict(b_n), _largest_part(rem_a),
                                  threshold, beta, alpha, budget)
        threshold = res_v.right_end
        f = f + res_v.f
        sum_h = sum_h + project_fn(res_v.f, alpha)
        omega_parts.extend(res_v.U.parts)
        rem_b = rem_b - b_n
    omega = ElementarySet(omega_parts)
    return TruncatedTiling(f, A - rem_a, B - rem_b, rounds, omega.measure(), omega, alpha, beta)


def thm_a31_truncated(p, q, rounds: int, alpha=1, beta=SQRT,
                      budget: ShiftSearchBudget = DEFAULT_BUDGET) -> TruncatedTiling:
    """Arbitrary levels ``(p, q)`` on both full circles, truncated after ``rounds`` rounds."""
    alpha, beta = _check_moduli(alpha, beta)
    p, q = cnum(p), cnum(q)
    out = alternating_scheme(ElementarySet.full_circle(alpha), ElementarySet.full_circle(beta),
                             p, q, rounds, 0, alpha, beta, budget)
    return _with_levels(out, p, q)


def _with_levels(t: TruncatedTiling, p, q, **parts) -> TruncatedTiling:
    return TruncatedTiling(t.f, t.covered_a, t.covered_b, t.rounds, t.support_measure, t.omega,
                           t.alpha, t.beta, cnum(p), cnum(q), dict(parts))


@dataclass(frozen=True)
class FNSystem:
    """Intervals ``L_ij = [0, gamma) + n_i*alpha + m_j*beta`` with their circle images.

    ``arcs_a[j]`` is the common ``alpha`` image of column ``j``; ``arcs_b[i]``
    is the common ``beta`` image of row ``i``.
    """

    p: int
    q: int
    gamma: FieldNum
    alpha: FieldNum
    beta: FieldNum
    n_shifts: tuple[int, ...]
    m_shifts: tuple[int, ...]
    intervals: dict
    arcs_a: tuple[ElementarySet, ...]
    arcs_b: tuple[ElementarySet, ...]
    properties: dict

    def items(self):
        return sorted(self.intervals.items())


def _pairwise_disjoint(sets) -> bool:
    sets = list(sets)
    return all(a.isdisjoint(b) for i, a in enumerate(sets) for b in sets[i + 1:])


def fn_interval_system(p: int, q: int, gamma, alpha=1, beta=SQRT,
                       budget: ShiftSearchBudget = DEFAULT_BUDGET) -> FNSystem:
    """The ``p x q`` system of disjoint ``gamma``-intervals with aligned projections."""
    alpha, beta = _check_moduli(alpha, beta)
    gamma = fnum(gamma)
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gamma.sign() <= 0:
        raise ValueError("gamma must be positive")
    if not (gamma < alpha / q and gamma < beta / p):
        raise GammaTooLarge(f"gamma = {gamma} must be below min(alpha/q, beta/p)")
    m_shifts = find_disjoint_system(q, gamma, beta, alpha, budget)
    n_shifts = find_disjoint_system(p, gamma, alpha, beta, budget)
    intervals = {}
    for i, n_i in enumerate(n_shifts):
        for j, m_j in enumerate(m_shifts):
            lo = alpha * n_i + beta * m_j
            intervals[(i, j)] = Interval(lo, lo + gamma)
    arcs_a = tuple(arc(alpha, beta * m_j, gamma) for m_j in m_shifts)
    arcs_b = tuple(arc(beta, alpha * n_i, gamma) for n_i in n_shifts)
    props = {
        "lengths": all(iv.length == gamma for iv in intervals.values()),
        "alpha_images": all(project(ElementarySet([iv]), alpha) == arcs_a[j]
                            for (i, j), iv in intervals.items()),
        "beta_images": all(project(ElementarySet([iv]), beta) == arcs_b[i]
                           for (i, j), iv in intervals.items()),
        "arcs_a_disjoint": _pairwise_disjoint(arcs_a),
        "arcs_b_disjoint": _pairwise_disjoint(arcs_b),
        "intervals_disjoint": _pairwise_disjoint(ElementarySet([iv]) for iv in intervals.values()),
    }
    if not all(props.values()):
        raise AssertionError(f"interval system properties failed: {props}")
    return FNSystem(p, q, gamma, alpha, beta, tuple(n_shifts), tuple(m_shifts), intervals,
                    arcs_a, arcs_b, props)


@dataclass(frozen=True)
class FNTiling:
    """``f`` with ``pi_alpha(f) = p`` on ``A`` and ``pi_beta(f) = q`` on ``B``; unpacks as ``(f, A, B)``."""

    f: PiecewiseFn
    A: ElementarySet
    B: ElementarySet
    omega: ElementarySet
    system: FNSystem
    array: DSArray

    def __iter__(self):
        return iter((self.f, self.A, self.B))


def fn_tiler(p: int, q: int, gamma, alpha=1, beta=SQRT,
             budget: ShiftSearchBudget = DEFAULT_BUDGET) -> FNTiling:
    """Weight the interval system by a minimal-support ``p x q`` doubly stochastic array.

    Row sums of the array are ``q`` and column sums ``p``, so each arc of
    ``A`` collects ``p`` and each arc of ``B`` collects ``q``, while only
    ``p + q - 1`` of the intervals carry weight.
    """
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) = {math.gcd(p, q)}")
    system = fn_interval_system(p, q, gamma, alpha, beta, budget)
    M = nw_minimal(p, q)
    pieces = [(iv.lo, iv.hi, M[i, j]) for (i, j), iv in system.items() if M[i, j]]
    f = PiecewiseFn(pieces)
    A = ElementarySet([iv for a in system.arcs_a for iv in a.parts], system.alpha)
    B = ElementarySet([iv for b in system.arcs_b for iv in b.parts], system.beta)
    return FNTiling(f, A, B, f.support(), system, M)


def thm_a25_truncated(p: int, q: int, eps, rounds: int, alpha=1, beta=SQRT,
                      budget: ShiftSearchBudget = DEFAULT_BUDGET) -> TruncatedTiling:
    """Levels ``(p, q)`` with support close to ``alpha + beta - min(alpha/q, beta/p)``.

    Takes ``gamma = sigma - eps/2`` with ``sigma = min(alpha/q, beta/p)``,
    builds the weighted interval system on ``A1, B1`` and fills the
    complements with the alternating scheme placed to its right.
    """
    alpha, beta = _check_moduli(alpha, beta)
    eps = fnum(eps)
    sigma = min(alpha / q, beta / p)
    if not (eps.sign() > 0 and eps < sigma):
        raise ValueError(f"eps must lie in (0, {sigma})")
    gamma = sigma - eps / 2
    first = fn_tiler(p, q, gamma, alpha, beta, budget)
    A2 = first.A.complement()
    B2 = first.B.complement()
    r = first.omega.bounds()[1]
    second = alternating_scheme(A2, B2, p, q, rounds, r, alpha, beta, budget)
    f = first.f + second.f
    omega = first.omega | second.omega
    out = TruncatedTiling(f, first.A | second.covered_a, first.B | second.covered_b, rounds,
                          omega.measure(), omega, alpha, beta)
    return _with_levels(out, p, q, gamma=gamma, fn=first, fill=second)


def thm_a26_truncated(eps, rounds: int, alpha=1, beta=SQRT,
                      budget: ShiftSearchBudget = DEFAULT_BUDGET) -> TruncatedTiling:
    """Levels ``(1, 0)`` with support at most ``alpha + eps``; ``pi_beta(f)`` lives in ``[0, eps)``."""
    alpha, beta = _check_moduli(alpha, beta)
    eps = fnum(eps)
    if eps.sign() <= 0:
        raise ValueError("eps must be positive")
    B = arc(beta, 0, eps)
    out = alternating_scheme(ElementarySet.full_circle(alpha), B, 1, 0, rounds, 0,
                             alpha, beta, budget)
    return _with_levels(out, 1, 0, B=B)
