"""The six discrete subrings of C that admit continued fraction digits.

Every ring is stored as Z + Z*theta with theta = i*sqrt(k) (k = 1, 2, 3) or
theta = (1 + i*sqrt(tau))/2 (tau = 3, 7, 11).  theta satisfies
theta^2 = trace*theta - norm, which gives one multiplication rule for all six.
Writing theta = trace/2 + i*S, the imaginary unit S has S^2 = k or tau/4, so
real parts of field elements are rational and imaginary parts are rational
multiples of sqrt(sqrt_key).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd

from .interval import ComplexBox, Interval
from .reals import ExactReal


@dataclass(frozen=True)
class RingSpec:
    name: str
    kind: str  # "sqrt" for Z[i sqrt k], "half" for Z[(1 + i sqrt tau)/2]
    param: int

    @property
    def trace(self) -> int:
        return 0 if self.kind == "sqrt" else 1

    @property
    def norm(self) -> int:
        return self.param if self.kind == "sqrt" else (self.param + 1) // 4

    @property
    def im_sq(self) -> Fraction:
        """S^2 where theta = trace/2 + i*S."""
        return Fraction(self.param) if self.kind == "sqrt" else Fraction(self.param, 4)

    @property
    def sqrt_key(self) -> int:
        return self.param

    @property
    def im_coeff(self) -> Fraction:
        return Fraction(1) if self.kind == "sqrt" else Fraction(1, 2)

    @property
    def is_eisenstein(self) -> bool:
        return self.kind == "half" and self.param == 3

    def im_unit(self, prec: int) -> Interval:
        return _im_unit(self.im_sq, prec)

    def im_unit_exact(self) -> ExactReal:
        return ExactReal.sqrt(self.im_sq)

    def __call__(self, x: int = 0, y: int = 0) -> "RingElement":
        return RingElement(self, int(x), int(y))

    def field(self, u=0, v=0) -> "FieldElement":
        return FieldElement(self, Fraction(u), Fraction(v))

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, 0, 0)

    @property
    def one(self) -> "RingElement":
        return RingElement(self, 1, 0)

    @property
    def theta(self) -> "RingElement":
        return RingElement(self, 0, 1)

    def __str__(self):
        return self.name


GAUSSIAN = RingSpec("Zi", "sqrt", 1)
ZI2 = RingSpec("Zi2", "sqrt", 2)
ZI3 = RingSpec("Zi3", "sqrt", 3)
EISENSTEIN = RingSpec("E", "half", 3)
E7 = RingSpec("E7", "half", 7)
E11 = RingSpec("E11", "half", 11)

RINGS = {r.name: r for r in (GAUSSIAN, ZI2, ZI3, EISENSTEIN, E7, E11)}


def get_ring(name: str) -> RingSpec:
    try:
        return RINGS[name]
    except KeyError:
        raise ValueError(f"unknown ring {name!r}; expected one of {', '.join(RINGS)}") from None


class _Arith:
    """Shared operations for elements u + v*theta of K."""

    __slots__ = ()

    def _coords(self):
        raise NotImplementedError

    @property
    def re(self) -> Fraction:
        u, v = self._coords()
        return Fraction(u) + Fraction(v * self.ring.trace, 2)

    @property
    def im_rational(self) -> Fraction:
        """The imaginary part divided by S."""
        return Fraction(self._coords()[1])

    def abs_sq(self):
        u, v = self._coords()
        r = self.ring
        return u * u + r.trace * u * v + r.norm * v * v

    def is_zero(self) -> bool:
        u, v = self._coords()
        return u == 0 and v == 0

    def embed(self, prec: int) -> ComplexBox:
        v = self._coords()[1]
        return ComplexBox(
            Interval.from_fraction(self.re, prec),
            self.ring.im_unit(prec).scale(v),
        )

    def exact_parts(self) -> tuple[ExactReal, ExactReal]:
        return ExactReal.rational(self.re), self.ring.im_unit_exact() * Fraction(self._coords()[1])

    def __complex__(self):
        u, v = self._coords()
        return complex(float(self.re), float(v) * float(self.ring.im_sq) ** 0.5)


@dataclass(frozen=True, slots=True)
class RingElement(_Arith):
    ring: RingSpec
    x: int
    y: int

    def _coords(self):
        return self.x, self.y

    def _lift(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, int):
            return RingElement(self.ring, other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, -self.x, -self.y)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        r = self.ring
        yy = self.y * o.y
        return RingElement(r, self.x * o.x - r.norm * yy, self.x * o.y + self.y * o.x + r.trace * yy)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.to_field() ** k
        out, base = self.ring.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "RingElement":
        return RingElement(self.ring, self.x + self.ring.trace * self.y, -self.y)

    def to_field(self) -> "FieldElement":
        return FieldElement._raw(self.ring, self.x, self.y, 1)

    def __truediv__(self, other):
        return self.to_field() / other

    def __rtruediv__(self, other):
        return other / self.to_field()

    def __bool__(self):
        return bool(self.x or self.y)

    def __str__(self):
        return f"{self.x},{self.y}@{self.ring.name}"

    def __repr__(self):
        return f"RingElement({self})"

    @classmethod
    def parse(cls, text: str, ring: RingSpec | None = None) -> "RingElement":
        body, _, name = text.strip().partition("@")
        if name:
            r = get_ring(name)
            if ring is not None and r != ring:
                raise ValueError(f"{text!r} is not in ring {ring.name}")
        elif ring is None:
            raise ValueError(f"ring element {text!r} needs an @RING suffix")
        else:
            r = ring
        parts = body.split(",")
        if len(parts) == 1:
            return RingElement(r, int(parts[0]), 0)
        if len(parts) != 2:
            raise ValueError(f"cannot parse ring element {text!r}")
        return RingElement(r, int(parts[0]), int(parts[1]))


class FieldElement(_Arith):
    """u + v*theta stored as (a + b*theta)/d with d > 0 and gcd(a, b, d) = 1."""

    __slots__ = ("ring", "a", "b", "d")

    def __init__(self, ring: RingSpec, u=0, v=0):
        u, v = Fraction(u), Fraction(v)
        d = u.denominator * v.denominator // gcd(u.denominator, v.denominator)
        self._set(ring, u.numerator * (d // u.denominator), v.numerator * (d // v.denominator), d)

    def _set(self, ring, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def _raw(cls, ring, a, b, d) -> "FieldElement":
        out = cls.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        out._set(ring, a, b, d)
        return out

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement._raw, (self.ring, self.a, self.b, self.d))

    @property
    def u(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def v(self) -> Fraction:
        return Fraction(self.b, self.d)

    def _coords(self):
        return self.u, self.v

    @property
    def re(self) -> Fraction:
        return Fraction(2 * self.a + self.ring.trace * self.b, 2 * self.d)

    @property
    def im_rational(self) -> Fraction:
        return self.v

    def embed(self, prec: int) -> ComplexBox:
        n, den = (2 * self.a + self.ring.trace * self.b) << prec, 2 * self.d
        return ComplexBox(Interval(n // den, -((-n) // den), prec),
                          self.ring.im_unit(prec).scale_ratio(self.b, self.d))

    def abs_sq(self) -> Fraction:
        a, b, r = self.a, self.b, self.ring
        return Fraction(a * a + r.trace * a * b + r.norm * b * b, self.d * self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.d)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ring == other.ring and self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction, RingElement)):
            o = self._lift(other)
            return o is not None and self == o
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.name, self.a, self.b, self.d))

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return FieldElement._raw(self.ring, other.x, other.y, 1)
        if isinstance(other, int):
            return FieldElement._raw(self.ring, other, 0, 1)
        if isinstance(other, Fraction):
            return FieldElement._raw(self.ring, other.numerator, 0, other.denominator)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.d == o.d:
            return FieldElement._raw(self.ring, self.a + o.a, self.b + o.b, self.d)
        return FieldElement._raw(self.ring, self.a * o.d + o.a * self.d,
                                 self.b * o.d + o.b * self.d, self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.ring, -self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        r = self.ring
        bb = self.b * o.b
        return FieldElement._raw(r, self.a * o.a - r.norm * bb,
                                 self.a * o.b + self.b * o.a + r.trace * bb, self.d * o.d)

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        return FieldElement._raw(self.ring, self.a + self.ring.trace * self.b, -self.b, self.d)

    def inverse(self) -> "FieldElement":
        a, b, r = self.a, self.b, self.ring
        n = a * a + r.trace * a * b + r.norm * b * b
        if n == 0:
            raise ZeroDivisionError("division by zero in K")
        # 1/((a + b theta)/d) = d * conj(a + b theta) / n
        return FieldElement._raw(r, (a + r.trace * b) * self.d, -b * self.d, n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElement._raw(self.ring, 1, 0, 1)
        for _ in range(k):
            out = out * self
        return out

    def is_integral(self) -> bool:
        return self.d == 1

    def to_ring(self) -> RingElement:
        if not self.is_integral():
            raise ValueError(f"{self} is not in the ring")
        return RingElement(self.ring, self.a, self.b)

    def __bool__(self):
        return bool(self.a or self.b)

    def __str__(self):
        return f"{self.u},{self.v}@{self.ring.name}"

    def __repr__(self):
        return f"FieldElement({self})"


def abs_sq(e) -> Fraction:
    """Exact squared modulus of a ring or field element."""
    return Fraction(e.abs_sq())


def covering_radius(ring: RingSpec) -> ExactReal:
    """Circumradius of the nearest-integer cell of the lattice."""
    if ring.kind == "sqrt":
        return ExactReal.sqrt(Fraction(1 + ring.param, 4))
    tau = ring.param
    return ExactReal.sqrt(Fraction((tau + 1) ** 2, 16 * tau))


# Eisenstein conversion views: rho = theta, omega = theta - 1, j = i*sqrt(3).

def rho(ring: RingSpec = EISENSTEIN) -> RingElement:
    if not ring.is_eisenstein:
        raise ValueError("rho is defined for the Eisenstein ring")
    return RingElement(ring, 0, 1)


def omega(ring: RingSpec = EISENSTEIN) -> RingElement:
    return rho(ring) - 1


def jay(ring: RingSpec = EISENSTEIN) -> RingElement:
    return 2 * rho(ring) - 1


def units(ring: RingSpec) -> list[RingElement]:
    return [e for e in _small_elements(ring, 1) if e.abs_sq() == 1]


def _small_elements(ring: RingSpec, radius_sq: int) -> list[RingElement]:
    ymax = int((radius_sq / ring.im_sq) ** 0.5) + 1
    out = []
    for y in range(-ymax, ymax + 1):
        for x in range(-2 * ymax - 2 - radius_sq, 2 * ymax + 3 + radius_sq):
            e = RingElement(ring, x, y)
            if e.abs_sq() <= radius_sq:
                out.append(e)
    return out


def elements_within(ring: RingSpec, radius_sq: int) -> list[RingElement]:
    """All ring elements with |e|^2 <= radius_sq (brute force enumeration)."""
    return _small_elements(ring, radius_sq)


def _bisector_sign(box: ComplexBox, a: RingElement, b: RingElement) -> int | None:
    """Sign of |zeta-a|^2 - |zeta-b|^2 over the box (None if it changes)."""
    # |zeta-a|^2 - |zeta-b|^2 = |a|^2 - |b|^2 - 2 Re(zeta * conj(a - b))
    w = a - b
    prec = box.prec
    lin = box.re * Interval.from_fraction(w.re, prec) + box.im * a.ring.im_unit(prec).scale(w.y)
    return lin.scale(-2).sign_vs(Fraction(b.abs_sq() - a.abs_sq()))


def lattice_candidates(box: ComplexBox, ring: RingSpec, margin=Fraction(1)) -> list[RingElement]:
    """Ring elements within ``margin`` (plus box size) of the box."""
    s = float(ring.im_sq) ** 0.5
    m = float(margin) + 1e-9
    ylo = floor((float(box.im_lo) - m) / s) - 1
    yhi = ceil((float(box.im_hi) + m) / s) + 1
    out = []
    for y in range(ylo, yhi + 1):
        shift = y * ring.trace / 2
        for x in range(floor(float(box.re_lo) - m - shift) - 1, ceil(float(box.re_hi) + m - shift) + 2):
            out.append(RingElement(ring, x, y))
    return out


@lru_cache(maxsize=None)
def _im_unit(im_sq: Fraction, prec: int) -> Interval:
    return Interval.sqrt_of(im_sq, prec)


@lru_cache(maxsize=None)
def relevant_vectors(ring: RingSpec) -> tuple[RingElement, ...]:
    """Nonzero v with |v| <= 2 * covering radius; their bisectors bound the cell of 0."""
    cr = covering_radius(ring)
    bound = (cr * cr * 4).as_fraction()
    return tuple(e for e in _small_elements(ring, ceil(bound))
                 if not e.is_zero() and e.abs_sq() <= bound)


def _guess_nearest(z: ComplexBox, ring: RingSpec) -> RingElement:
    c = z.approx()
    s = float(ring.im_sq) ** 0.5
    y = round(c.imag / s)
    x = round(c.real - y * ring.trace / 2)
    return RingElement(ring, x, y)


def nearest_lattice_points(z: ComplexBox, ring: RingSpec) -> set[RingElement]:
    """Every ring element whose nearest-integer cell may contain a point of the box.

    A singleton means the nearest element is the same for the whole box.
    """
    a = _guess_nearest(z, ring)
    if all(_bisector_sign(z, a, a + v) == -1 for v in relevant_vectors(ring)):
        return {a}
    cands = []
    bound = Fraction(1)  # covering radius <= 1 for all six rings
    for a in lattice_candidates(z, ring):
        d = (z - a.embed(z.prec)).abs_sq()
        if d.lo_q <= bound:
            cands.append(a)
    keep = set()
    for a in cands:
        if all(_bisector_sign(z, a, b) != 1 for b in cands if b != a):
            keep.add(a)
    return keep


def nearest_in_ring(e: FieldElement) -> RingElement:
    """Nearest ring element among the neighbours of coordinate rounding (exact)."""
    x0, y0 = round(e.u), round(e.v)
    best = None
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            a = RingElement(e.ring, x0 + dx, y0 + dy)
            d = Fraction((e - a).abs_sq())
            if best is None or d < best[0]:
                best = (d, a)
    return best[1]


def ring_gcd(a: RingElement, b: RingElement) -> RingElement:
    """A greatest common divisor by Euclid's algorithm.

    Needs covering radius < 1 so the remainder shrinks; for Z[i sqrt 3] only
    the integer content is returned.
    """
    ring = a.ring
    if ring.kind == "sqrt" and ring.param == 3:
        return RingElement(ring, gcd(a.x, a.y, b.x, b.y), 0)
    while not b.is_zero():
        q = nearest_in_ring(a / b)
        a, b = b, a - q * b
    return a
