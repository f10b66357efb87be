from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ccf.interval import ComplexBox, Interval, RationalBox

qs = st.fractions(min_value=-100, max_value=100, max_denominator=1000)
pos = st.fractions(min_value=Fraction(1, 1000), max_value=100, max_denominator=1000)
precs = st.sampled_from([8, 32, 64, 200])


@given(qs, qs, precs)
def test_ring_operations_contain_exact_result(x, y, p):
    ix, iy = Interval.from_fraction(x, p), Interval.from_fraction(y, p)
    assert (ix + iy).contains(x + y)
    assert (ix - iy).contains(x - y)
    assert (ix * iy).contains(x * y)
    assert ix.scale(y).contains(x * y)
    assert ix.square().contains(x * x)


@given(pos, precs)
def test_reciprocal_and_sqrt_contain(x, p):
    ix = Interval.from_fraction(x, p)
    if ix.contains_zero():
        with pytest.raises(ZeroDivisionError):
            ix.reciprocal()
    else:
        assert ix.reciprocal().contains(1 / x)
    s = Interval.sqrt_of(x, p)
    assert s.lo_q ** 2 <= x <= s.hi_q ** 2


@given(qs, qs, qs, qs, precs)
def test_complex_box_operations(a, b, c, d, p):
    z, w = ComplexBox.point(a, b, p), ComplexBox.point(c, d, p)
    prod = z * w
    assert prod.contains_point(a * c - b * d, a * d + b * c)
    assert z.abs_sq().contains(a * a + b * b)
    if not w.contains_zero() and not w.abs_sq().contains_zero():
        n = c * c + d * d
        assert w.reciprocal().contains_point(c / n, -d / n)


def test_sign_vs_and_zero():
    iv = Interval.from_bounds(Fraction(1, 3), Fraction(1, 2), 64)
    assert iv.sign_vs(0) == 1
    assert iv.sign_vs(1) == -1
    assert iv.sign_vs(Fraction(2, 5)) is None
    assert Interval(0, 0, 10).sign_vs(0) == 0
    with pytest.raises(ZeroDivisionError):
        Interval(-1, 1, 10).reciprocal()


def test_rational_box_is_exact_input():
    box = RationalBox.point(Fraction(123, 100), Fraction(77, 100))
    assert box.is_point
    b = box.at(256)
    assert b.contains_point(Fraction(123, 100), Fraction(77, 100))
    assert b.width <= Fraction(1, 2 ** 255)
