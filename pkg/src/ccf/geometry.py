"""Exact disks in C and their images under inversion.

Centers have ExactReal coordinates and radii are stored squared, so disks
with radius sqrt(lambda), lambda irrational, stay exact.  Predicates compare
sums of square roots by repeated squaring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .reals import ExactReal, sqrt_sum_sign
from .rings import FieldElement, RingElement


@dataclass(frozen=True)
class ExactComplex:
    re: ExactReal
    im: ExactReal

    @classmethod
    def from_field(cls, e: FieldElement | RingElement) -> "ExactComplex":
        return cls(*e.exact_parts())

    @classmethod
    def of(cls, re, im=0) -> "ExactComplex":
        return cls(ExactReal.coerce(re), ExactReal.coerce(im))

    def __add__(self, o: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, o):
        if not isinstance(o, ExactComplex):
            o = ExactReal.coerce(o)
            return ExactComplex(self.re * o, self.im * o)
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs_sq(self) -> ExactReal:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return f"({self.re}) + ({self.im})i"


@dataclass(frozen=True)
class Disk:
    center: ExactComplex
    radius_sq: ExactReal
    closed: bool = False

    def __post_init__(self):
        if self.radius_sq.sign() <= 0:
            raise ValueError("disk radius must be positive")

    @property
    def radius(self) -> float:
        return float(self.radius_sq) ** 0.5

    def translate(self, w: ExactComplex) -> "Disk":
        return Disk(self.center + w, self.radius_sq, self.closed)

    def rotate(self, u: ExactComplex) -> "Disk":
        """Image under multiplication by u (|u| = 1 assumed for the radius)."""
        return Disk(self.center * u, self.radius_sq * u.abs_sq(), self.closed)

    def contains_point(self, p: ExactComplex) -> bool:
        s = ((p - self.center).abs_sq() - self.radius_sq).sign()
        return s < 0 or (s == 0 and self.closed)

    def describe(self) -> dict:
        return {"center": [str(self.center.re), str(self.center.im)],
                "radius_sq": str(self.radius_sq), "closed": self.closed,
                "approx": [float(self.center.re), float(self.center.im), self.radius]}


@dataclass(frozen=True)
class HalfPlaneRegion:
    """{w : Re(w * normal) > bound} (>= when closed)."""

    normal: ExactComplex
    bound: ExactReal
    closed: bool = False

    def complement(self) -> "HalfPlaneRegion":
        return HalfPlaneRegion(-self.normal, -self.bound, not self.closed)

    def contains_point(self, p: ExactComplex) -> bool:
        val = (p * self.normal).re - self.bound
        s = val.sign()
        return s > 0 or (s == 0 and self.closed)


def invert_disk(d: Disk) -> Disk:
    """Image {1/w : w in d} of a disk that stays away from 0."""
    n = d.center.abs_sq() - d.radius_sq
    if n.sign() <= 0:
        raise ValueError("disk contains 0 or boundary")
    inv = n.inverse()
    return Disk(d.center.conj() * inv, d.radius_sq * inv * inv, d.closed)


def inverse_halfplane(d: Disk) -> HalfPlaneRegion:
    """Image of a disk whose boundary passes through 0 (0 itself removed)."""
    if d.center.abs_sq() != d.radius_sq:
        raise ValueError("boundary circle does not pass through 0")
    # |1/w - c| < |c|  <=>  Re(w c) > 1/2
    return HalfPlaneRegion(d.center, ExactReal.rational(Fraction(1, 2)), d.closed)


def disk_within(inner: Disk, outer: Disk) -> str:
    """'inside', 'boundary' (touches an open outer boundary) or 'outside'."""
    dist_sq = (inner.center - outer.center).abs_sq()
    s = sqrt_sum_sign(dist_sq, inner.radius_sq, outer.radius_sq)
    if s < 0:
        return "inside"
    if s == 0:
        return "inside" if (outer.closed or not inner.closed) else "boundary"
    return "outside"


def disks_disjoint(d1: Disk, d2: Disk) -> bool:
    dist_sq = (d1.center - d2.center).abs_sq()
    s = -sqrt_sum_sign(d1.radius_sq, d2.radius_sq, dist_sq)
    if s > 0:
        return True
    if s == 0:
        return not (d1.closed and d2.closed)
    return False
