"""Exact arithmetic in the real quadratic field Q(sqrt d) and its complexification.

Every coordinate, length and measure in the library is a :class:`FieldNum`
``r + s*sqrt(d)`` with rational ``r, s``.  Because ``sqrt(d)`` is irrational
the representation is unique and the sign of any element is decidable with
integer arithmetic only, so no comparison on a decision path ever touches
floating point.

The discriminant ``d`` is a session constant read once from the environment
variable ``SIMULTILE_D`` (default 2).
"""
from __future__ import annotations

import math
import os
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, NonPositiveModulus

__all__ = [
    "FieldNum",
    "ComplexField",
    "session_d",
    "fnum",
    "cnum",
    "SQRT",
    "field_sign",
    "reduce_mod",
    "rationally_independent",
    "parse_number",
]


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _read_session_d() -> int:
    raw = os.environ.get("SIMULTILE_D", "2")
    try:
        d = int(raw)
    except ValueError:
        raise ValueError(f"SIMULTILE_D must be an integer, got {raw!r}") from None
    if d < 2 or _is_square(d):
        raise ValueError(f"SIMULTILE_D must be a non-square integer >= 2, got {d}")
    return d


_SESSION_D = _read_session_d()


def session_d() -> int:
    return _SESSION_D


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational, str)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class FieldNum:
    """An element ``r + s*sqrt(d)`` of Q(sqrt d), immutable and totally ordered."""

    __slots__ = ("r", "s", "d")

    def __init__(self, r=0, s=0, d: int | None = None):
        object.__setattr__(self, "r", _frac(r))
        object.__setattr__(self, "s", _frac(s))
        object.__setattr__(self, "d", _SESSION_D if d is None else int(d))

    def __setattr__(self, name, value):
        raise AttributeError("FieldNum is immutable")

    def __reduce__(self):
        return (FieldNum, (self.r, self.s, self.d))

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> FieldNum | None:
        if isinstance(other, FieldNum):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) with Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Rational)):
            return FieldNum(other, 0, self.d)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldNum(self.r + o.r, self.s + o.s, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldNum(self.r - o.r, self.s - o.s, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldNum(-self.r, -self.s, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldNum(
            self.r * o.r + self.d * self.s * o.s,
            self.r * o.s + self.s * o.r,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> FieldNum:
        return FieldNum(self.r, -self.s, self.d)

    def norm(self) -> Fraction:
        """Field norm ``r**2 - d*s**2``; zero only for the zero element."""
        return self.r * self.r - self.d * self.s * self.s

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by zero in Q(sqrt d)")
        n = o.norm()
        num = self * o.conjugate()
        return FieldNum(num.r / n, num.s / n, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return FieldNum(1, 0, self.d) / (self ** -k)
        out = FieldNum(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- order ------------------------------------------------------------
    def sign(self) -> int:
        r, s = self.r, self.s
        if s == 0:
            return (r > 0) - (r < 0)
        if r == 0:
            return (s > 0) - (s < 0)
        if r > 0 and s > 0:
            return 1
        if r < 0 and s < 0:
            return -1
        # opposite signs: compare r**2 with d*s**2 (never equal, sqrt d irrational),
        # cross-multiplied in integers to skip Fraction normalization
        lhs = (r.numerator * s.denominator) ** 2
        rhs = self.d * (s.numerator * r.denominator) ** 2
        if r > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __bool__(self):
        return self.r != 0 or self.s != 0

    def _cmp(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (FieldNum, int, Rational)) else None
        if o is None:
            return NotImplemented
        return self.r == o.r and self.s == o.s

    def __hash__(self):
        if self.s == 0:
            return hash(self.r)
        return hash((self.r, self.s, self.d))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- integer parts ----------------------------------------------------
    def _floor_guess(self) -> int:
        g = math.floor(self.r)
        a, b = self.s.numerator, self.s.denominator
        root = math.isqrt(a * a * self.d)
        return g + (root // b if a >= 0 else -(root // b) - 1)

    def __floor__(self) -> int:
        k = self._floor_guess()
        while self < k:
            k -= 1
        while self >= k + 1:
            k += 1
        return k

    def __ceil__(self) -> int:
        k = math.floor(self)
        return k if self == k else k + 1

    def is_rational(self) -> bool:
        return self.s == 0

    # -- conversions ------------------------------------------------------
    def __float__(self):
        return float(self.r) + float(self.s) * math.sqrt(self.d)

    def to_decimal(self, digits: int = 12) -> str:
        with localcontext() as ctx:
            ctx.prec = digits + 30
            v = Decimal(self.r.numerator) / Decimal(self.r.denominator)
            v += Decimal(self.s.numerator) / Decimal(self.s.denominator) * Decimal(self.d).sqrt()
            return f"{v:.{digits}f}"

    def __repr__(self):
        return f"FieldNum({str(self.r)!r}, {str(self.s)!r}, d={self.d})"

    def __str__(self):
        root = f"√{self.d}"
        if self.s == 0:
            return str(self.r)
        coef = "" if abs(self.s) == 1 else f"{abs(self.s)}·"
        if self.r == 0:
            return f"{'-' if self.s < 0 else ''}{coef}{root}"
        op = "-" if self.s < 0 else "+"
        return f"{self.r} {op} {coef}{root}"


def fnum(x) -> FieldNum:
    """Coerce an int, Fraction, rational string or FieldNum to FieldNum."""
    if isinstance(x, FieldNum):
        return x
    if isinstance(x, str):
        return parse_number(x).re
    return FieldNum(x)


SQRT = FieldNum(0, 1)
"""The generator sqrt(d) of the session field."""


def field_sign(a) -> int:
    return fnum(a).sign()


class ComplexField:
    """A complex number ``re + i*im`` with both parts in Q(sqrt d)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", fnum(re))
        object.__setattr__(self, "im", fnum(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexField is immutable")

    def __reduce__(self):
        return (ComplexField, (self.re, self.im))

    @staticmethod
    def _coerce(other) -> ComplexField | None:
        if isinstance(other, ComplexField):
            return other
        if isinstance(other, (FieldNum, int, Rational)):
            return ComplexField(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexField(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexField(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return ComplexField(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (FieldNum, int, Rational)):
            return ComplexField(self.re * other, self.im * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ComplexField(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> ComplexField:
        return ComplexField(self.re, -self.im)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("complex division by zero")
        den = o.re * o.re + o.im * o.im
        num = self * o.conjugate()
        return ComplexField(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_decimal(self, digits: int = 12) -> str:
        if not self.im:
            return self.re.to_decimal(digits)
        return f"{self.re.to_decimal(digits)} + {self.im.to_decimal(digits)}i"

    def __repr__(self):
        return f"ComplexField({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"({self.im})i"
        return f"{self.re} + ({self.im})i"


def cnum(x) -> ComplexField:
    if isinstance(x, ComplexField):
        return x
    if isinstance(x, str):
        return parse_number(x)
    return ComplexField(x, 0)


def reduce_mod(x, L) -> tuple[FieldNum, int]:
    """Return ``(residue, k)`` with ``x = residue + k*L`` and ``0 <= residue < L``."""
    x, L = fnum(x), fnum(L)
    if L.sign() <= 0:
        raise NonPositiveModulus(f"modulus must be positive, got {L}")
    k = math.floor(x / L)
    return x - L * k, k


def rationally_independent(alpha, beta) -> bool:
    """True iff ``alpha/beta`` is irrational, i.e. has a nonzero sqrt(d) part."""
    alpha, beta = fnum(alpha), fnum(beta)
    if alpha.sign() <= 0 or beta.sign() <= 0:
        raise NonPositiveModulus("rational independence is tested for positive numbers")
    return (alpha / beta).s != 0


# -- text parsing ----------------------------------------------------------

def _parse_real_term(tok: str) -> FieldNum:
    tok = tok.replace(" ", "")
    for marker in ("sqrt(", "√"):
        if marker in tok:
            head, _, tail = tok.partition(marker)
            tail = tail.rstrip(")")
            head = head.rstrip("*·")
            d = int(tail) if tail else _SESSION_D
            if d != _SESSION_D:
                raise ValueError(f"only sqrt({_SESSION_D}) is available in this session")
            coef = Fraction(1) if head in ("", "+") else Fraction(-1) if head == "-" else Fraction(head)
            return FieldNum(0, coef)
    return FieldNum(Fraction(tok), 0)


def parse_number(text: str) -> ComplexField:
    """Parse expressions like ``3``, ``-1/2``, ``1+sqrt(2)``, ``2√2``, ``1/3 - 2i``."""
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty number")
    terms: list[str] = []
    cur = ""
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("/", "*")):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    re = FieldNum(0)
    im = FieldNum(0)
    for t in terms:
        t = t.strip()
        if t.endswith(("i", "j")):
            body = t[:-1].rstrip("*·")
            body = {"": "1", "+": "1", "-": "-1"}.get(body, body)
            if body.startswith("(") and body.endswith(")"):
                im = im + parse_number(body[1:-1]).re
            elif body[:1] in "+-" and body[1:2] == "(":
                v = parse_number(body[2:-1]).re
                im = im + (v if body[0] == "+" else -v)
            else:
                im = im + _parse_real_term(body)
        else:
            re = re + _parse_real_term(t)
    return ComplexField(re, im)
