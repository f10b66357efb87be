import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ccf.exact_surd import (
    ReducibleError, SurdContext, SurdElement, auxiliary_context, field_sqrt, point_in_field, refine_bracket,
    surd_add, surd_eq, surd_inv, surd_mul,
)
from ccf.rings import EISENSTEIN as E, GAUSSIAN as ZI, FieldElement, get_ring, jay

from oracles import dec, dsqrt

fr = st.fractions(min_value=-12, max_value=12, max_denominator=9)


def ctx_i_sqrt2():
    return SurdContext.from_coeffs(E, E(1), E(0), E(2), select="+im")


def ctx_1_plus_sqrt2():
    return SurdContext.from_coeffs(E, E(1), E(-2), E(-1), select="+re")


def test_reduction_by_minimal_polynomial():
    ctx = ctx_i_sqrt2()
    z = ctx.z
    assert surd_mul(z, z) == ctx.element(E.field(-2), E.field(0))
    assert surd_inv(z) == z * Fraction(-1, 2)
    assert surd_add(z, -z).is_zero()


def test_inverse_of_z_minus_two():
    # (z - 2)(z) = z^2 - 2z = 1 for z^2 - 2z - 1 = 0, so the inverse is z itself
    ctx = ctx_1_plus_sqrt2()
    z = ctx.z
    assert (z - 2).inverse() == z
    assert (z - 2) * (z - 1) != ctx.one


def test_refine_bracket_widths():
    box = refine_bracket(ctx_i_sqrt2(), Fraction(1, 1000))
    assert box.width <= Fraction(1, 1000)
    assert box.contains_point(0, Fraction(141421356, 10 ** 8)) or abs(box.approx() - 1.41421356j) < 1e-3
    box = refine_bracket(ctx_1_plus_sqrt2(), Fraction(1, 1000))
    assert box.width <= Fraction(1, 1000)
    assert abs(box.approx() - 2.41421356) < 1e-3


def test_root_selection_against_quadratic_formula():
    # z^2 - j z + 1 = 0: roots i(sqrt3 +- sqrt7)/2, product 1, on the imaginary axis
    j = jay()
    ctx = SurdContext.from_coeffs(E, E(1), -j, E(1), select="+im")
    want = (1j * 3 ** 0.5 + cmath.sqrt(-3 - 4)) / 2
    assert abs(ctx.root_box(128).approx() - want) < 1e-12
    assert abs(ctx.other_root_box(128).approx() - 1 / want) < 1e-12
    lo = ctx.root_box(256)
    im = (dsqrt(3) + dsqrt(7)) / 2
    assert dec(lo.im.lo_q) <= im <= dec(lo.im.hi_q)


def test_surd_eq_examples():
    ctx = ctx_i_sqrt2()
    u = ctx.element(E.field(0), E.field(1))
    assert surd_eq(u, ctx.element(E.field(0), E.field(1)))
    assert not surd_eq(ctx.z, -ctx.z)


def test_reducible_quadratic_is_rejected():
    with pytest.raises(ReducibleError):
        SurdContext.from_coeffs(E, E(1), E(0), E(-1))
    # z^2 - j z - 1 has discriminant j^2 + 4 = 1
    with pytest.raises(ReducibleError):
        SurdContext.from_coeffs(E, E(1), -jay(), E(-1))
    assert field_sqrt(E.field(-3)) in (jay().to_field(), -jay().to_field())


def test_same_polynomial_up_to_scaling():
    ctx = ctx_i_sqrt2()
    k = E(2, 1)
    other = SurdContext.from_coeffs(E, k, E(0), 2 * k, select="+im")
    assert ctx.same_polynomial(other)
    assert not ctx.same_polynomial(SurdContext.from_coeffs(E, E(1), E(0), E(2), select="-im"))


def test_json_round_trip():
    ctx = SurdContext.from_coeffs(E, E(3, -1), E(2, 5), E(-7, 1), select=-1)
    back = SurdContext.from_json(ctx.to_json())
    assert back.same_polynomial(ctx)


def test_point_in_field():
    assert point_in_field(ZI, Fraction(1, 2), Fraction(3, 4)) == FieldElement(ZI, Fraction(1, 2), Fraction(3, 4))
    assert point_in_field(E, 0, 1) is None
    assert point_in_field(get_ring("Zi2"), 0, 1) is None
    ctx = auxiliary_context(E)
    assert not ctx.disc.is_zero()


def surd_elements(ctx):
    return st.builds(lambda a, b, c, d: ctx.element(ctx.ring.field(a, b), ctx.ring.field(c, d)), fr, fr, fr, fr)


CTX = SurdContext.from_coeffs(E, E(2, 1), E(-3, 4), E(5, -2), select=1)


@given(surd_elements(CTX), surd_elements(CTX), surd_elements(CTX))
def test_quotient_algebra_is_a_field(x, y, w):
    assert x * (y + w) == x * y + x * w
    assert (x * y) * w == x * (y * w)
    if not x.is_zero():
        assert x * x.inverse() == CTX.one


@given(surd_elements(CTX), surd_elements(CTX))
def test_embedding_is_a_homomorphism(x, y):
    prod = (x * y).box(128).approx()
    assert abs(prod - x.box(128).approx() * y.box(128).approx()) < 1e-6 * (1 + abs(prod))


@given(surd_elements(CTX), fr)
def test_exact_signs_agree_with_boxes(x, c):
    s = x.re_sign(c)
    b = x.box(256)
    if s > 0:
        assert b.re.hi_q > c
    elif s < 0:
        assert b.re.lo_q < c
    t = x.abs_sq_sign(abs(c))
    n = x.box(256).abs_sq()
    if t > 0:
        assert n.hi_q > abs(c)
    elif t < 0:
        assert n.lo_q < abs(c)


def test_conjugate_detection():
    z = ctx_i_sqrt2().z
    assert z.conj_equals(-z)
    assert not z.conj_equals(z)
    w = ctx_1_plus_sqrt2().z
    assert w.conj_equals(w)
    assert not w.conj_equals(w - 1)
    g = CTX.z
    assert not g.conj_equals(g) and not g.conj_equals(-g)


@given(fr, fr, fr, fr)
def test_conjugate_of_field_values(a, b, c, d):
    x = CTX.element(E.field(a, b), E.field(0))
    y = CTX.element(E.field(c, d), E.field(0))
    assert x.conj_equals(y) == (E.field(a, b).conj() == E.field(c, d))
    assert x.conj_equals(CTX.element(E.field(a, b).conj(), E.field(0)))
