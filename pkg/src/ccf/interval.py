"""Outward-rounded interval arithmetic on dyadic rationals.

An ``Interval`` at precision ``p`` stores integers ``lo, hi`` and denotes
``[lo / 2^p, hi / 2^p]``.  Every operation rounds the lower end down and the
upper end up, so results always contain the exact value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class Interval:
    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: int, hi: int, prec: int):
        if lo > hi:
            raise ValueError("interval with lo > hi")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    @classmethod
    def from_fraction(cls, q, prec: int) -> "Interval":
        q = Fraction(q)
        n = q.numerator << prec
        return cls(_floor_div(n, q.denominator), _ceil_div(n, q.denominator), prec)

    @classmethod
    def from_bounds(cls, lo, hi, prec: int) -> "Interval":
        lo, hi = Fraction(lo), Fraction(hi)
        return cls(
            _floor_div(lo.numerator << prec, lo.denominator),
            _ceil_div(hi.numerator << prec, hi.denominator),
            prec,
        )

    @classmethod
    def sqrt_of(cls, q, prec: int) -> "Interval":
        """Enclosure of sqrt(q) for a rational q >= 0."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("sqrt of negative rational")
        # sqrt(n/d) * 2^p = sqrt(n * d * 4^p) / d
        t = q.numerator * q.denominator << (2 * prec)
        s = isqrt(t)
        hi = s if s * s == t else s + 1
        return cls(_floor_div(s, q.denominator), _ceil_div(hi, q.denominator), prec)

    @property
    def lo_q(self) -> Fraction:
        return Fraction(self.lo, 1 << self.prec)

    @property
    def hi_q(self) -> Fraction:
        return Fraction(self.hi, 1 << self.prec)

    @property
    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.prec)

    @property
    def mid(self) -> Fraction:
        return Fraction(self.lo + self.hi, 2 << self.prec)

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, q) -> bool:
        q = Fraction(q)
        return self.lo_q <= q <= self.hi_q

    def sign_vs(self, q) -> int | None:
        """Sign of (x - q) for every x in the interval, or None if mixed."""
        q = Fraction(q)
        n, d = q.numerator << self.prec, q.denominator
        if self.lo * d > n:
            return 1
        if self.hi * d < n:
            return -1
        if self.lo == self.hi and self.lo * d == n:
            return 0
        return None

    def intersects(self, other: "Interval") -> bool:
        if self.prec == other.prec:
            return not (self.hi < other.lo or other.hi < self.lo)
        return not (self.hi_q < other.lo_q or other.hi_q < self.lo_q)

    def _align(self, other):
        if isinstance(other, Interval):
            if other.prec != self.prec:
                raise ValueError("precision mismatch")
            return other
        return Interval.from_fraction(other, self.prec)

    def __add__(self, other):
        other = self._align(other)
        return Interval(self.lo + other.lo, self.hi + other.hi, self.prec)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        other = self._align(other)
        return Interval(self.lo - other.hi, self.hi - other.lo, self.prec)

    def __rsub__(self, other):
        return self._align(other) - self

    def scale(self, q) -> "Interval":
        """Exact rational multiple, rounded outward."""
        if isinstance(q, int):
            return self.scale_ratio(q, 1)
        q = Fraction(q)
        return self.scale_ratio(q.numerator, q.denominator)

    def scale_ratio(self, num: int, den: int) -> "Interval":
        """Multiple by num/den (den > 0), rounded outward."""
        a, b = self.lo * num, self.hi * num
        if a > b:
            a, b = b, a
        if den == 1:
            return Interval(a, b, self.prec)
        return Interval(_floor_div(a, den), _ceil_div(b, den), self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._align(other)
        p = self.prec
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(prods) >> p, -((-max(prods)) >> p), p)

    __rmul__ = __mul__

    def square(self) -> "Interval":
        p = self.prec
        a, b = self.lo * self.lo, self.hi * self.hi
        if self.lo <= 0 <= self.hi:
            return Interval(0, -((-max(a, b)) >> p), p)
        return Interval(min(a, b) >> p, -((-max(a, b)) >> p), p)

    def reciprocal(self) -> "Interval":
        if self.contains_zero():
            raise ZeroDivisionError("reciprocal of an interval containing 0")
        p = self.prec
        one = 1 << (2 * p)
        return Interval(_floor_div(one, self.hi), _ceil_div(one, self.lo), p)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return self * self._align(other).reciprocal()

    def sqrt(self) -> "Interval":
        """Enclosure of sqrt over the nonnegative part of the interval."""
        if self.hi < 0:
            raise ValueError("sqrt of a negative interval")
        p = self.prec
        lo = isqrt(max(self.lo, 0) << p)
        t = self.hi << p
        s = isqrt(t)
        return Interval(lo, s if s * s == t else s + 1, p)

    def hull(self, other: "Interval") -> "Interval":
        other = self._align(other)
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi), self.prec)

    def __repr__(self):
        return f"Interval[{float(self.lo_q):.6g}, {float(self.hi_q):.6g}]@{self.prec}"


@dataclass(frozen=True)
class ComplexBox:
    """Axis-aligned complex box; containment-correct under all operations."""

    re: Interval
    im: Interval

    @classmethod
    def point(cls, re, im, prec: int) -> "ComplexBox":
        return cls(Interval.from_fraction(re, prec), Interval.from_fraction(im, prec))

    @property
    def prec(self) -> int:
        return self.re.prec

    @property
    def re_lo(self) -> Fraction:
        return self.re.lo_q

    @property
    def re_hi(self) -> Fraction:
        return self.re.hi_q

    @property
    def im_lo(self) -> Fraction:
        return self.im.lo_q

    @property
    def im_hi(self) -> Fraction:
        return self.im.hi_q

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def bounds(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.re_lo, self.re_hi, self.im_lo, self.im_hi

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def intersects(self, other: "ComplexBox") -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def contains_point(self, re, im) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def __add__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexBox":
        return ComplexBox(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexBox(self.re.scale(other), self.im.scale(other))
        return ComplexBox(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def abs_sq(self) -> Interval:
        return self.re.square() + self.im.square()

    def reciprocal(self) -> "ComplexBox":
        n = self.abs_sq()
        if n.lo <= 0:
            raise ZeroDivisionError("reciprocal of a box touching 0")
        inv = n.reciprocal()
        return ComplexBox(self.re * inv, -(self.im * inv))

    def __truediv__(self, other: "ComplexBox") -> "ComplexBox":
        return self * other.reciprocal()

    def approx(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))

    def __repr__(self):
        return f"ComplexBox({self.re!r}, {self.im!r})"


@dataclass(frozen=True)
class RationalBox:
    """Exact complex box with rational corners; the input form for numeric mode."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @classmethod
    def point(cls, re, im) -> "RationalBox":
        re, im = Fraction(re), Fraction(im)
        return cls(re, re, im, im)

    @property
    def is_point(self) -> bool:
        return self.re_lo == self.re_hi and self.im_lo == self.im_hi

    def at(self, prec: int) -> ComplexBox:
        return ComplexBox(
            Interval.from_bounds(self.re_lo, self.re_hi, prec),
            Interval.from_bounds(self.im_lo, self.im_hi, prec),
        )
