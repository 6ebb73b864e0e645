"""Exact arithmetic in the quadratic field Q(sqrt 2).

Every number is stored as ``a + b*sqrt(2)`` with rational ``a`` and ``b``.
Because sqrt(2) is irrational the representation is unique, so equality
and ordering are decided exactly.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

SQRT2_FLOAT = math.sqrt(2.0)


class BackendError(TypeError):
    """Raised when exact and floating-point scalars meet in one computation."""


class NotRepresentableError(ValueError):
    """Raised when a result does not lie in Q(sqrt 2)."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, float):
        raise BackendError("float cannot enter exact arithmetic")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@total_ordering
class QuadScalar:
    """Immutable number ``a + b*sqrt(2)`` with rational parts."""

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0) -> None:
        # Fraction keeps lowest terms with a positive denominator.
        self._a = _frac(a)
        self._b = _frac(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, x) -> QuadScalar:
        if isinstance(x, QuadScalar):
            return x
        return cls(_frac(x), 0)

    def __repr__(self) -> str:
        return f"QuadScalar({self._a}, {self._b})"

    def __str__(self) -> str:
        return format_exact(self)

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * SQRT2_FLOAT

    def _other(self, other):
        if isinstance(other, QuadScalar):
            return other
        if isinstance(other, float):
            raise BackendError("cannot mix exact and float scalars")
        if isinstance(other, (int, Rational)):
            return QuadScalar(other)
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, float):
            raise BackendError("cannot compare exact and float scalars")
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def sign(self) -> int:
        a, b = self._a, self._b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # Opposite signs: compare a^2 with 2 b^2.
        lhs, rhs = a * a, 2 * b * b
        if lhs == rhs:
            return 0  # unreachable for rationals, kept for safety
        return sa if lhs > rhs else sb

    def __lt__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self) -> QuadScalar:
        return QuadScalar(-self._a, -self._b)

    def __pos__(self) -> QuadScalar:
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._a, self._b, o._a, o._b
        return QuadScalar(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> QuadScalar:
        """Galois conjugate ``a - b*sqrt(2)``."""
        return QuadScalar(self._a, -self._b)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``."""
        return self._a * self._a - 2 * self._b * self._b

    def inverse(self) -> QuadScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero QuadScalar")
        return QuadScalar(self._a / n, -self._b / n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = QuadScalar(1)
        for _ in range(abs(n)):
            result = result * base
        return result

    def __abs__(self) -> QuadScalar:
        return -self if self.sign() < 0 else self

    def sqrt(self) -> QuadScalar:
        """Square root inside the field, or NotRepresentableError."""
        if self.sign() < 0:
            raise ValueError("square root of a negative number")
        a, b = self._a, self._b
        if b == 0:
            r = _rational_sqrt(a)
            if r is not None:
                return QuadScalar(r, 0)
            r = _rational_sqrt(a / 2)
            if r is not None:
                return QuadScalar(0, r)
            raise NotRepresentableError(f"sqrt({self}) is not in Q(sqrt2)")
        # (c + d s2)^2 = c^2 + 2 d^2 + 2 c d s2
        disc = _rational_sqrt(a * a - 2 * b * b)
        if disc is not None:
            for c2 in ((a + disc) / 2, (a - disc) / 2):
                c = _rational_sqrt(c2)
                if c:
                    cand = QuadScalar(c, b / (2 * c))
                    if cand.sign() < 0:
                        cand = -cand
                    if cand * cand == self:
                        return cand
        raise NotRepresentableError(f"sqrt({self}) is not in Q(sqrt2)")


SQRT2 = QuadScalar(0, 1)
HALF_SQRT2 = QuadScalar(0, Fraction(1, 2))


# Scalar text grammar: "R", "R*s2", "R + R*s2", "R - R*s2"; R is p/q or p.
_RAT = r"[+-]?\d+(?:/\d+)?"
_EXACT_RE = re.compile(
    rf"^\s*(?:(?P<a>{_RAT})\s*(?:(?P<op>[+-])\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*s2)?"
    rf"|(?P<bonly>{_RAT})\s*\*\s*s2)\s*$"
)
_FLOAT_RE = re.compile(r"^\s*[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?\s*$|^\s*[+-]?(?:inf|nan)\s*$")


def parse_exact(text: str) -> QuadScalar:
    m = _EXACT_RE.match(text)
    if not m:
        raise ValueError(f"not an exact scalar: {text!r}")
    if m.group("bonly") is not None:
        return QuadScalar(0, Fraction(m.group("bonly")))
    a = Fraction(m.group("a"))
    b = Fraction(0)
    if m.group("b") is not None:
        b = Fraction(m.group("b"))
        if m.group("op") == "-":
            b = -b
    return QuadScalar(a, b)


def parse_float(text: str) -> float:
    if not _FLOAT_RE.match(text):
        raise ValueError(f"not a float scalar: {text!r}")
    return float(text)


def format_exact(x: QuadScalar) -> str:
    a, b = x.a, x.b
    if b == 0:
        return str(a)
    if a == 0:
        return f"{b}*s2"
    op = "-" if b < 0 else "+"
    return f"{a} {op} {abs(b)}*s2"


def format_float(x: float) -> str:
    # 17 significant digits round-trip every double.
    return f"{float(x):.16e}"
