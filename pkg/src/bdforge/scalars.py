"""Exact scalar tower: arbitrary-precision rationals and quadratic extensions Q(sqrt d).

Rationals are stdlib ``fractions.Fraction`` (always in lowest terms, positive
denominator).  ``QuadExt`` models a + b*sqrt(d) for a squarefree non-square
integer d, with Galois conjugation a + b*sqrt(d) -> a - b*sqrt(d).  All
arithmetic is exact; nothing in this package ever rounds.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_QUAD_RE = re.compile(r"^(?P<a>-?\d+(?:/\d+)?)(?P<sign>[+-])(?P<b>\d+(?:/\d+)?)\*sqrt\((?P<d>-?\d+)\)$")


def is_squarefree(n: int) -> bool:
    """True iff n is a nonzero integer with no repeated prime factor."""
    if n == 0:
        return False
    n = abs(n)
    if n % 4 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        while n % p == 0:
            n //= p
        p += 2
    return True


def is_square_in_Q(x) -> bool:
    """True iff x is the square of a rational number."""
    x = Fraction(x)
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


class QuadExt:
    """Element a + b*sqrt(d) of the quadratic field Q(sqrt d).

    d must be a squarefree integer other than 0 and 1, so representations are
    canonical and sqrt(d) is genuinely irrational.  Values are immutable.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int) -> None:
        d = int(d)
        if d in (0, 1) or not is_squarefree(d):
            raise ValueError(f"discriminant must be a squarefree integer != 0, 1, got {d}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- basic structure -------------------------------------------------

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - d*b^2, a rational number."""
        return self.a * self.a - self.d * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_part(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d == self.d or other.b == 0:
                return Fraction(other.a), Fraction(other.b)
            if self.b == 0:
                return None  # handled by caller promoting to other.d
            raise ValueError(f"mixed discriminants {self.d} and {other.d}")
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def _promote(self, other: "QuadExt"):
        # self is purely rational, other carries a different discriminant
        return QuadExt(self.a, 0, other.d), other

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        co = self._coerce(other)
        if co is NotImplemented:
            return NotImplemented
        if co is None:
            s, o = self._promote(other)
            return s + o
        oa, ob = co
        return QuadExt(self.a + oa, self.b + ob, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadExt) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        co = self._coerce(other)
        if co is NotImplemented:
            return NotImplemented
        if co is None:
            s, o = self._promote(other)
            return s * o
        oa, ob = co
        return QuadExt(self.a * oa + self.d * self.b * ob, self.a * ob + self.b * oa, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in QuadExt")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        co = self._coerce(other)
        if co is NotImplemented:
            return NotImplemented
        if co is None:
            s, o = self._promote(other)
            return s / o
        oa, ob = co
        return self * QuadExt(oa, ob, self.d).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self):
        return scalar_to_str(self)


def quad_conjugate(x: QuadExt) -> QuadExt:
    """Galois conjugation of Q(sqrt d)/Q: a + b*sqrt(d) -> a - b*sqrt(d)."""
    return x.conjugate()


def conj_scalar(x):
    """Conjugation extended to the whole scalar tower (identity on rationals)."""
    if isinstance(x, QuadExt):
        return x.conjugate()
    return Fraction(x)


def as_rational(x) -> Fraction:
    """Extract the rational value of a scalar; raises if it is irrational."""
    if isinstance(x, QuadExt):
        return x.rational_part()
    return Fraction(x)


def scalar_to_str(x) -> str:
    """Canonical string form: "p/q" or "p/q+r/s*sqrt(d)" (denominators explicit)."""
    if isinstance(x, QuadExt) and x.b != 0:
        a, b = x.a, x.b
        sign = "+" if b >= 0 else "-"
        b = abs(b)
        return (f"{a.numerator}/{a.denominator}{sign}"
                f"{b.numerator}/{b.denominator}*sqrt({x.d})")
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_str(s: str):
    """Inverse of scalar_to_str; also accepts bare integers like "3"."""
    s = s.strip()
    m = _QUAD_RE.match(s)
    if m:
        b = Fraction(m.group("b"))
        if m.group("sign") == "-":
            b = -b
        return QuadExt(Fraction(m.group("a")), b, int(m.group("d")))
    return Fraction(s)
