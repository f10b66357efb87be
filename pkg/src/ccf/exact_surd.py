"""Exact arithmetic in K(z) = K[X]/(aX^2 + bX + c) for a quadratic surd z.

Elements are pairs (alpha, beta) of field elements standing for
alpha + beta*z.  The particular complex root z is fixed by a branch sign:
z = (-b + sign*sqrt(disc)) / (2a) with the principal square root, which is
exact data, so refinement never has to re-identify the root.

Sign decisions about real quantities built from an element and its complex
conjugate (needed for nearest-integer choices) are decided exactly: equality
reduces to an algebraic identity in K(z) plus a numeric choice between two
distinct roots; a nonzero sign is found by refinement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .interval import ComplexBox, Interval, RationalBox
from .rings import FieldElement, RingElement, RingSpec, get_ring

_MAX_BITS = 1 << 14
START_BITS = 64


class ReducibleError(ValueError):
    """The quadratic has a root in K, so its roots are not quadratic surds."""


def _rational_sqrt(q: Fraction) -> Fraction | None:
    from math import isqrt

    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def field_sqrt(delta: FieldElement) -> FieldElement | None:
    """A square root of ``delta`` inside K, or None if there is none."""
    ring = delta.ring
    D = ring.im_sq
    # write delta = R0 + I0*(i S) and look for w = R + I*(i S)
    r0 = delta.re
    i0 = delta.v
    if i0 == 0:
        r = _rational_sqrt(r0)
        if r is not None:
            return _from_parts(ring, r, Fraction(0))
        i = _rational_sqrt(-r0 / D)
        if i is not None:
            return _from_parts(ring, Fraction(0), i)
        return None
    root = _rational_sqrt(r0 * r0 + D * i0 * i0)
    if root is None:
        return None
    i_sq = (root - r0) / (2 * D)
    i = _rational_sqrt(i_sq)
    if i is None or i == 0:
        return None
    return _from_parts(ring, i0 / (2 * i), i)


def point_in_field(ring: RingSpec, re, im) -> FieldElement | None:
    """The element of K at the rational point re + im*i, or None if it is not in K."""
    re, im = Fraction(re), Fraction(im)
    v = _rational_sqrt(im * im / ring.im_sq)
    if v is None:
        return None
    return _from_parts(ring, re, v if im >= 0 else -v)


def auxiliary_context(ring: RingSpec) -> "SurdContext":
    """A fixed context z^2 = p over K, used to run exact iteration on elements of K."""
    for p in (2, 3, 5, 7, 11, 13):
        try:
            return SurdContext.from_coeffs(ring, ring(1), ring(0), ring(-p), select="+re")
        except ReducibleError:
            continue
    raise AssertionError(f"no auxiliary quadratic found for {ring.name}")


def _from_parts(ring: RingSpec, re: Fraction, im_over_s: Fraction) -> FieldElement:
    # x + y*theta has real part x + y*trace/2 and imaginary part y*S
    y = im_over_s
    return FieldElement(ring, re - y * ring.trace / 2, y)


def principal_sqrt_box(delta: RingElement, prec: int) -> ComplexBox:
    """Enclosure of the principal square root (Re > 0, or Re = 0 and Im >= 0)."""
    ring = delta.ring
    X = Fraction(delta.re)
    y = Fraction(delta.y)
    if y == 0:
        if X >= 0:
            return ComplexBox(Interval.sqrt_of(X, prec), Interval.from_fraction(0, prec))
        return ComplexBox(Interval.from_fraction(0, prec), Interval.sqrt_of(-X, prec))
    Y = ring.im_unit(prec).scale(y)
    modulus = Interval.sqrt_of(X * X + y * y * ring.im_sq, prec)
    if X >= 0:
        re = ((modulus + X).scale(Fraction(1, 2))).sqrt()
        im = Y / re.scale(2)
    else:
        im = ((modulus - X).scale(Fraction(1, 2))).sqrt()
        if y < 0:
            im = -im
        re = Y / im.scale(2)
    return ComplexBox(re, im)


@dataclass(frozen=True)
class SurdContext:
    ring: RingSpec
    a: RingElement
    b: RingElement
    c: RingElement
    branch: int = 1
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        if not self.a:
            raise ValueError("leading coefficient must be nonzero")
        for e in (self.a, self.b, self.c):
            if e.ring != self.ring:
                raise ValueError("coefficient ring mismatch")
        if field_sqrt(self.disc.to_field()) is not None:
            raise ReducibleError("input corresponds to an element of K: the quadratic has a root in K")
        object.__setattr__(self, "_b_over_a", self.b / self.a)
        object.__setattr__(self, "_c_over_a", self.c / self.a)

    @property
    def disc(self) -> RingElement:
        return self.b * self.b - 4 * self.a * self.c

    @classmethod
    def from_coeffs(cls, ring: RingSpec, a, b, c, select="+im") -> "SurdContext":
        """Build a context and pick the root named by ``select``.

        ``select`` is one of "+im", "-im", "+re", "-re", "big" (|z| > 1 side),
        "small", an explicit branch 1/-1, a complex approximation, or a
        RationalBox/ComplexBox bracket.
        """
        a, b, c = (_ring_el(ring, e) for e in (a, b, c))
        if select in (1, -1):
            return cls(ring, a, b, c, select)
        probe = cls(ring, a, b, c, 1)
        return cls(ring, a, b, c, probe._select_branch(select))

    def _select_branch(self, select) -> int:
        prec = START_BITS
        while prec <= _MAX_BITS:
            plus = self._root_box_for(1, prec)
            minus = self._root_box_for(-1, prec)
            choice = _choose(plus, minus, select)
            if choice is not None:
                return choice
            prec *= 2
        raise ValueError(f"root selector {select!r} does not distinguish the two roots")

    def _root_box_for(self, branch: int, prec: int) -> ComplexBox:
        s = principal_sqrt_box(self.disc, prec)
        num = (-self.b).embed(prec) + (s if branch == 1 else -s)
        inv2a = (Fraction(1, 2) / self.a)
        return num * inv2a.embed(prec)

    def root_box(self, prec: int) -> ComplexBox:
        box = self._cache.get(("root", prec))
        if box is None:
            box = self._root_box_for(self.branch, prec)
            self._cache[("root", prec)] = box
        return box

    def other_root_box(self, prec: int) -> ComplexBox:
        return self._root_box_for(-self.branch, prec)

    @property
    def bracket(self) -> ComplexBox:
        """Box isolating the selected root from the other one."""
        prec = START_BITS
        while True:
            box, other = self.root_box(prec), self.other_root_box(prec)
            if not box.intersects(other):
                return box
            prec *= 2

    @property
    def z(self) -> "SurdElement":
        zero = self.ring.field()
        return SurdElement(self, zero, self.ring.field(1))

    @property
    def one(self) -> "SurdElement":
        return SurdElement(self, self.ring.field(1), self.ring.field())

    def element(self, alpha, beta=0) -> "SurdElement":
        return SurdElement(self, _field_el(self.ring, alpha), _field_el(self.ring, beta))

    def same_polynomial(self, other: "SurdContext") -> bool:
        """Same minimal polynomial up to a K-multiple and the same root."""
        if self.ring != other.ring:
            return False
        a1, b1, c1 = self.a, self.b, self.c
        a2, b2, c2 = other.a, other.b, other.c
        if a1 * b2 != a2 * b1 or a1 * c2 != a2 * c1 or b1 * c2 != b2 * c1:
            return False
        prec = START_BITS
        while prec <= _MAX_BITS:
            mine, theirs = self.root_box(prec), other.root_box(prec)
            if not mine.intersects(theirs):
                return False
            if not mine.intersects(other.other_root_box(prec)):
                return True
            prec *= 2
        raise ArithmeticError("could not separate roots")

    def to_json(self) -> dict:
        br = self.bracket
        return {
            "ring": self.ring.name,
            "minpoly": [_ring_str(e) for e in (self.a, self.b, self.c)],
            "bracket": [str(q) for q in br.bounds()],
        }

    @classmethod
    def from_json(cls, data) -> "SurdContext":
        if isinstance(data, str):
            data = json.loads(data)
        ring = get_ring(data["ring"])
        coeffs = data["minpoly"]
        if len(coeffs) != 3:
            raise ValueError("minpoly must have three coefficients")
        lo_re, hi_re, lo_im, hi_im = (Fraction(q) for q in data["bracket"])
        return cls.from_coeffs(ring, *coeffs, select=RationalBox(lo_re, hi_re, lo_im, hi_im))

    def __str__(self):
        return f"({self.a})z^2 + ({self.b})z + ({self.c}) over {self.ring.name}, branch {self.branch:+d}"


def _ring_str(e: RingElement) -> str:
    return f"{e.x},{e.y}"


def _ring_el(ring: RingSpec, e) -> RingElement:
    if isinstance(e, RingElement):
        return e
    if isinstance(e, int):
        return RingElement(ring, e, 0)
    if isinstance(e, (tuple, list)):
        return RingElement(ring, int(e[0]), int(e[1]))
    if isinstance(e, str):
        return RingElement.parse(e, ring)
    raise TypeError(f"cannot make a ring element from {e!r}")


def _field_el(ring: RingSpec, e) -> FieldElement:
    if isinstance(e, FieldElement):
        return e
    if isinstance(e, RingElement):
        return e.to_field()
    if isinstance(e, (int, Fraction)):
        return ring.field(e)
    raise TypeError(f"cannot make a field element from {e!r}")


def _choose(plus: ComplexBox, minus: ComplexBox, select) -> int | None:
    if plus.intersects(minus):
        return None
    if isinstance(select, RationalBox):
        p_hit = plus.intersects(select.at(plus.prec))
        m_hit = minus.intersects(select.at(plus.prec))
        if p_hit and not m_hit:
            return 1
        if m_hit and not p_hit:
            return -1
        if not p_hit and not m_hit:
            raise ValueError("bracket contains neither root")
        return None
    if isinstance(select, ComplexBox):
        return _choose(plus, minus, RationalBox(*select.bounds()))
    if isinstance(select, complex):
        d_plus = abs(plus.approx() - select)
        d_minus = abs(minus.approx() - select)
        return 1 if d_plus < d_minus else -1
    key = {"+im": ("im", 1), "-im": ("im", -1), "+re": ("re", 1), "-re": ("re", -1)}.get(select)
    if key is not None:
        part, sgn = key
        ip, im_ = getattr(plus, part), getattr(minus, part)
        if ip.lo_q > im_.hi_q:
            return sgn
        if ip.hi_q < im_.lo_q:
            return -sgn
        if ip.lo == ip.hi == im_.lo == im_.hi:
            raise ValueError(f"roots share the same {part} part; selector {select!r} is ambiguous")
        return None
    if select in ("big", "small"):
        np_, nm = plus.abs_sq(), minus.abs_sq()
        if np_.lo_q > nm.hi_q:
            return 1 if select == "big" else -1
        if np_.hi_q < nm.lo_q:
            return -1 if select == "big" else 1
        return None
    raise ValueError(f"unknown root selector {select!r}")


class SurdElement:
    """alpha + beta*z in the quotient algebra of a SurdContext."""

    __slots__ = ("ctx", "alpha", "beta")

    def __init__(self, ctx: SurdContext, alpha: FieldElement, beta: FieldElement):
        self.ctx = ctx
        self.alpha = alpha
        self.beta = beta

    def _lift(self, other) -> "SurdElement":
        if isinstance(other, SurdElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("elements from different surd contexts")
            return other
        return SurdElement(self.ctx, _field_el(self.ctx.ring, other), self.ctx.ring.field())

    def __add__(self, other):
        o = self._lift(other)
        return SurdElement(self.ctx, self.alpha + o.alpha, self.beta + o.beta)

    __radd__ = __add__

    def __neg__(self):
        return SurdElement(self.ctx, -self.alpha, -self.beta)

    def __sub__(self, other):
        o = self._lift(other)
        return SurdElement(self.ctx, self.alpha - o.alpha, self.beta - o.beta)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        ctx = self.ctx
        bb = self.beta * o.beta
        # z^2 = -(b/a) z - c/a
        alpha = self.alpha * o.alpha - bb * ctx._c_over_a
        beta = self.alpha * o.beta + self.beta * o.alpha - bb * ctx._b_over_a
        return SurdElement(ctx, alpha, beta)

    __rmul__ = __mul__

    def norm(self) -> FieldElement:
        """Relative norm to K: the product with the other-root conjugate."""
        ctx = self.ctx
        a, b = self.alpha, self.beta
        return a * a - a * b * ctx._b_over_a + b * b * ctx._c_over_a

    def inverse(self) -> "SurdElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in quotient algebra")
        n = self.norm().inverse()
        # conjugate alpha + beta*z' with z' = -b/a - z
        conj_alpha = self.alpha - self.beta * self.ctx._b_over_a
        return SurdElement(self.ctx, conj_alpha * n, -self.beta * n)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ctx.one
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and self.beta.is_zero()

    def in_field(self) -> bool:
        return self.beta.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SurdElement):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return self.alpha.key() + self.beta.key()

    def box(self, prec: int) -> ComplexBox:
        out = self.alpha.embed(prec)
        if not self.beta.is_zero():
            out = out + self.beta.embed(prec) * self.ctx.root_box(prec)
        return out

    def tight_box(self, width_bits: int = 32) -> ComplexBox:
        """Embedding box of width at most 2^-width_bits."""
        target = Fraction(1, 1 << width_bits)
        prec = START_BITS
        while True:
            box = self.box(prec)
            if box.width <= target or prec >= _MAX_BITS:
                return box
            prec *= 2

    def _other_box(self, prec: int) -> ComplexBox:
        out = self.alpha.embed(prec)
        if not self.beta.is_zero():
            out = out + self.beta.embed(prec) * self.ctx.other_root_box(prec)
        return out

    def horner_box(self, prec: int) -> ComplexBox:
        """Embedding computed as beta*z + alpha with a fresh root box."""
        return self.beta.embed(prec) * self.ctx.root_box(prec) + self.alpha.embed(prec)

    def conj_equals(self, other: "SurdElement") -> bool:
        """Exactly decide whether the complex conjugate of self equals other."""
        other = self._lift(other)
        if self.in_field():
            return other.in_field() and other.alpha == self.alpha.conj()
        ctx = self.ctx
        # conj(self) = conj(alpha) + conj(beta) * conj(z); solve for conj(z)
        cand = (other - self.alpha.conj()) / self.beta.conj()
        val = ctx.a.conj() * cand * cand + ctx.b.conj() * cand + ctx.c.conj()
        if not val.is_zero():
            return False
        # cand is one of the two distinct roots of the conjugate polynomial
        prec = START_BITS
        while prec <= _MAX_BITS:
            cb = cand.box(prec)
            if not cb.intersects(ctx.root_box(prec).conj()):
                return False
            if not cb.intersects(ctx.other_root_box(prec).conj()):
                return True
            prec *= 2
        raise ArithmeticError("could not separate conjugate roots")

    def re_sign(self, c=0) -> int:
        """Exact sign of Re(self) - c for rational c."""
        c = Fraction(c)
        if self.in_field():
            r = self.alpha.re
            return (r > c) - (r < c)
        return self._sign_by_refinement(lambda b: b.re.sign_vs(c),
                                        lambda: self.conj_equals(2 * c - self))

    def abs_sq_sign(self, r2=1) -> int:
        """Exact sign of |self|^2 - r2 for rational r2."""
        r2 = Fraction(r2)
        if self.in_field():
            n = Fraction(self.alpha.abs_sq())
            return (n > r2) - (n < r2)
        return self._sign_by_refinement(lambda b: b.abs_sq().sign_vs(r2),
                                        lambda: r2 >= 0 and self.conj_equals(self.inverse() * r2))

    def _sign_by_refinement(self, decide, is_zero) -> int:
        # cheap boxes first; the exact zero test only when they cannot decide
        prec = START_BITS
        zero_checked = False
        while prec <= _MAX_BITS:
            s = decide(self.box(prec))
            if s is not None:
                return s
            if not zero_checked and prec >= 4 * START_BITS:
                if is_zero():
                    return 0
                zero_checked = True
            prec *= 2
        raise ArithmeticError("sign refinement exceeded cap")

    def __repr__(self):
        return f"SurdElement({self.alpha} + ({self.beta})*z)"


def surd_add(u: SurdElement, v: SurdElement) -> SurdElement:
    return u + v


def surd_mul(u: SurdElement, v: SurdElement) -> SurdElement:
    return u * v


def surd_inv(u: SurdElement) -> SurdElement:
    return u.inverse()


def surd_eq(u: SurdElement, v: SurdElement) -> bool:
    return u == v


def refine_bracket(ctx: SurdContext, target_width) -> ComplexBox:
    """Containment-correct box of width <= target_width around the root."""
    target = Fraction(target_width)
    if target <= 0:
        raise ValueError("target width must be positive")
    prec = START_BITS
    while True:
        box = ctx.root_box(prec)
        if box.width <= target:
            return box
        prec *= 2
