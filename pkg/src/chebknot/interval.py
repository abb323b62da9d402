"""Exact dyadic intervals and outward-rounded fixed-point interval arithmetic.

``DyadicInterval`` is the certificate type: closed, exact ``Fraction``
endpoints whose denominators are powers of two.

``FixedInterval`` is the workhorse for evaluating trigonometric expressions:
both endpoints are integers scaled by ``2^-prec``, and every operation rounds
outward so the true value always stays enclosed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def format_dyadic(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class DyadicInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q) -> "DyadicInterval":
        q = Fraction(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "DyadicInterval") -> "DyadicInterval":
        return DyadicInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __neg__(self) -> "DyadicInterval":
        return DyadicInterval(-self.hi, -self.lo)

    def to_fixed(self, prec: int) -> "FixedInterval":
        scale = 1 << prec
        lo = (self.lo.numerator * scale) // self.lo.denominator
        hi = -((-self.hi.numerator * scale) // self.hi.denominator)
        return FixedInterval(lo, hi, prec)

    def __str__(self) -> str:
        return f"[{format_dyadic(self.lo)}, {format_dyadic(self.hi)}]"


def _ceil_shift(x: int, p: int) -> int:
    return -((-x) >> p)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class FixedInterval:
    """Closed interval ``[lo, hi] * 2^-prec`` with integer ``lo <= hi``."""

    lo: int
    hi: int
    prec: int

    @classmethod
    def exact(cls, value, prec: int) -> "FixedInterval":
        q = Fraction(value)
        scaled = q * (1 << prec)
        lo = scaled.numerator // scaled.denominator
        hi = _ceil_div(scaled.numerator, scaled.denominator)
        return cls(lo, hi, prec)

    def _coerce(self, other) -> "FixedInterval":
        if isinstance(other, FixedInterval):
            if other.prec != self.prec:
                raise ValueError("mixed precisions")
            return other
        if isinstance(other, int):
            v = other << self.prec
            return FixedInterval(v, v, self.prec)
        if isinstance(other, Fraction):
            return FixedInterval.exact(other, self.prec)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FixedInterval(self.lo + o.lo, self.hi + o.hi, self.prec)

    __radd__ = __add__

    def __neg__(self):
        return FixedInterval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FixedInterval(self.lo - o.hi, self.hi - o.lo, self.prec)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other >= 0:
                return FixedInterval(self.lo * other, self.hi * other, self.prec)
            return FixedInterval(self.hi * other, self.lo * other, self.prec)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.prec
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return FixedInterval(min(prods) >> p, _ceil_shift(max(prods), p), p)

    __rmul__ = __mul__

    def square(self) -> "FixedInterval":
        p = self.prec
        a, b = self.lo, self.hi
        if a >= 0:
            return FixedInterval((a * a) >> p, _ceil_shift(b * b, p), p)
        if b <= 0:
            return FixedInterval((b * b) >> p, _ceil_shift(a * a, p), p)
        return FixedInterval(0, _ceil_shift(max(a * a, b * b), p), p)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return self._coerce(1)
        if n == 1:
            return self
        half = self ** (n // 2)
        sq = half.square()
        return sq * self if n & 1 else sq

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        p = self.prec
        quots_num = [(x << p, y) for x in (self.lo, self.hi) for y in (o.lo, o.hi)]
        lo = min(x // y for x, y in quots_num)
        hi = max(_ceil_div(x, y) for x, y in quots_num)
        return FixedInterval(lo, hi, p)

    def sqrt(self) -> "FixedInterval":
        """Square root; a negative lower end is clipped to 0 (caller certifies >= 0)."""
        if self.hi < 0:
            raise ValueError("sqrt of a negative interval")
        p = self.prec
        lo = isqrt(max(self.lo, 0) << p)
        hn = self.hi << p
        r = isqrt(hn)
        hi = r if r * r == hn else r + 1
        return FixedInterval(lo, hi, p)

    # -- queries -----------------------------------------------------------

    def sign(self) -> int | None:
        """+1 / -1 when the interval excludes 0, 0 for exactly [0, 0], else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    @property
    def width_exponent(self) -> int:
        """Smallest ``e`` with width ``<= 2^e`` (very negative for exact points)."""
        w = self.hi - self.lo
        if w == 0:
            return -(10**9)
        return (w - 1).bit_length() - self.prec

    def to_dyadic(self) -> DyadicInterval:
        den = 1 << self.prec
        return DyadicInterval(Fraction(self.lo, den), Fraction(self.hi, den))

    def hull(self, other: "FixedInterval") -> "FixedInterval":
        o = self._coerce(other)
        return FixedInterval(min(self.lo, o.lo), max(self.hi, o.hi), self.prec)

    def overlaps(self, other: "FixedInterval") -> bool:
        o = self._coerce(other)
        return self.lo <= o.hi and o.lo <= self.hi

    def midpoint_float(self) -> float:
        return (self.lo + self.hi) / 2 / (1 << self.prec)
