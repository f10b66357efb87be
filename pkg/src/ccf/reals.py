"""Exact real numbers of the form  sum_m c_m * sqrt(m).

Each ``m`` is a squarefree positive integer and each ``c_m`` a rational.
Distinct square roots of squarefree integers are linearly independent over
Q, so equality is decided on coefficients; the sign of a nonzero value is
found by refining integer-square-root enclosures until it is separated from
zero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational

_MAX_SIGN_BITS = 1 << 16


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(f, m)`` with ``n == f*f*m`` and ``m`` squarefree."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    if n < 1 << 40:
        f, m, p = 1, 1, 2
        while p * p <= n:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                m *= p
            p += 1 if p == 2 else 2
        return f, m * n
    from sympy import factorint

    f = m = 1
    for p, e in factorint(n).items():
        f *= p ** (e // 2)
        if e % 2:
            m *= p
    return f, m


def sqrt_bounds(m: int, prec: int) -> tuple[int, int]:
    """Integers ``lo, hi`` with ``lo/2^prec <= sqrt(m) <= hi/2^prec``."""
    s = isqrt(m << (2 * prec))
    return s, s if s * s == m << (2 * prec) else s + 1


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class ExactReal:
    """Element of a multiquadratic field Q(sqrt(m1), sqrt(m2), ...)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def rational(cls, q) -> "ExactReal":
        return cls({1: _as_fraction(q)})

    @classmethod
    def sqrt(cls, q) -> "ExactReal":
        """Nonnegative square root of a nonnegative rational."""
        q = _as_fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls()
        f, m = squarefree_split(q.numerator * q.denominator)
        return cls({m: Fraction(f, q.denominator)})

    @staticmethod
    def coerce(x) -> "ExactReal":
        return x if isinstance(x, ExactReal) else ExactReal.rational(x)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExactReal(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactReal({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            return self + (-ExactReal.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return ExactReal.coerce(other) - self

    def __mul__(self, other):
        try:
            other = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                g = gcd(m1, m2)
                key = (m1 // g) * (m2 // g)
                out[key] = out.get(key, 0) + c1 * c2 * g
        return ExactReal(out)

    __rmul__ = __mul__

    def inverse(self) -> "ExactReal":
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        num = ExactReal({1: Fraction(1)})
        den = self
        while True:
            irr = [m for m in den.terms if m != 1]
            if not irr:
                break
            p = _smallest_prime_factor(irr[0])
            conj = ExactReal({m: (-c if m % p == 0 else c) for m, c in den.terms.items()})
            num = num * conj
            den = den * conj
        return num * Fraction(1, den.terms[1])

    def __truediv__(self, other):
        try:
            other = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_rational():
            return self * (1 / other.as_fraction())
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ExactReal.coerce(other) / self

    def __pow__(self, k: int):
        out = ExactReal.rational(1)
        for _ in range(k):
            out = out * self
        return out

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(m == 1 for m in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def bounds(self, prec: int) -> tuple[Fraction, Fraction]:
        """Rational enclosure [lo, hi] with absolute width about 2^-prec."""
        lo = hi = Fraction(0)
        scale = 1 << prec
        for m, c in self.terms.items():
            if m == 1:
                lo += c
                hi += c
                continue
            s_lo, s_hi = sqrt_bounds(m, prec)
            a, b = c * Fraction(s_lo, scale), c * Fraction(s_hi, scale)
            lo += min(a, b)
            hi += max(a, b)
        return lo, hi

    def sign(self) -> int:
        if not self.terms:
            return 0
        if self.is_rational():
            c = self.terms[1]
            return (c > 0) - (c < 0)
        prec = 32
        while prec <= _MAX_SIGN_BITS:
            lo, hi = self.bounds(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
        raise ArithmeticError("sign refinement exceeded precision cap")

    def __eq__(self, other):
        try:
            return (self - other).is_zero()
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_fraction())
        return hash(frozenset(self.terms.items()))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"ExactReal({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            body = str(c) if m == 1 else f"{c}*sqrt({m})"
            parts.append(body if not parts or body.startswith("-") else "+" + body)
        return "".join(parts)

    @classmethod
    def parse(cls, text: str) -> "ExactReal":
        """Inverse of ``str``: terms like ``p/q`` and ``r/s*sqrt(d)``."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty exact real")
        out = cls()
        pos = 0
        term = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?sqrt\((\d+)\))?")
        while pos < len(text):
            mt = term.match(text, pos)
            if not mt or mt.end() == pos or (mt.group(2) is None and mt.group(3) is None):
                raise ValueError(f"cannot parse exact real {text!r}")
            coeff = Fraction(mt.group(2) or 1)
            if mt.group(1) == "-":
                coeff = -coeff
            if mt.group(4):
                out = out + cls.sqrt(int(mt.group(4))) * coeff
            else:
                out = out + coeff
            pos = mt.end()
        return out


def _smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def sqrt_sum_sign(a, b, c) -> int:
    """Sign of sqrt(a) + sqrt(b) - sqrt(c) for exact nonnegative a, b, c."""
    a, b, c = (ExactReal.coerce(x) for x in (a, b, c))
    e = c - a - b
    if e.sign() < 0:
        return 1
    return (4 * a * b - e * e).sign()


def sqrt_cmp(a, b) -> int:
    """Sign of sqrt(a) - sqrt(b) for nonnegative exact a, b."""
    return (ExactReal.coerce(a) - ExactReal.coerce(b)).sign()
