from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ccf.algorithms import DigitUnresolved, ForcedStream, nearest_integer
from ccf.cf_core import (
    QPairState, condition_c_check, convergent, error_bound, error_constant, expand, iterate_surd,
    mobius_identity_check, qpair_step, qpairs, residual_identity_check,
)
from ccf.exact_surd import SurdContext
from ccf.interval import RationalBox
from ccf.reals import ExactReal
from ccf.rings import EISENSTEIN as E, GAUSSIAN as ZI, RingElement, covering_radius, get_ring

from oracles import dec, dsqrt


def i_sqrt2():
    return SurdContext.from_coeffs(ZI, ZI(1), ZI(0), ZI(2), select="+im")


def one_plus_sqrt2():
    return SurdContext.from_coeffs(E, E(1), E(-2), E(-1), select="+re")


def test_qpair_recurrence_examples():
    s0 = QPairState.start(ZI(0, 1))
    assert (s0.p_cur, s0.q_cur) == (ZI(0, 1), ZI(1))
    s1 = qpair_step(s0, ZI(0, -2))
    assert (s1.p_cur, s1.q_cur) == (ZI(3), ZI(0, -2))
    s2 = qpair_step(s1, ZI(0, 2))
    assert (s2.p_cur, s2.q_cur) == (ZI(0, 7), ZI(5))


nonzero = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda t: t != (0, 0))


@given(st.sampled_from(["Zi", "E", "Zi2", "E7"]), st.lists(nonzero, min_size=1, max_size=25))
def test_determinant_identity(name, digits):
    ring = get_ring(name)
    for s in qpairs([RingElement(ring, x, y) for x, y in digits]):
        assert s.determinant() == ring((-1) ** (s.n + 1))
        assert s.determinant_ok()


def test_i_sqrt2_expansion_and_identities():
    ctx = i_sqrt2()
    steps = list(iterate_surd(ctx, nearest_integer(ZI), 7))
    assert [s.a for s in steps] == [ZI(0, 1), ZI(0, -2), ZI(0, 2), ZI(0, -2), ZI(0, 2), ZI(0, -2), ZI(0, 2)]
    z = ctx.z
    z1 = steps[1].z
    # base case: q_0 z - p_0 = z - a_0 = 1/z_1
    assert z * steps[0].qpair.q_cur - steps[0].qpair.p_cur == z1.inverse()
    # n = 2: q_2 z - p_2 = 5 i sqrt2 - 7i = (z_1 z_2 z_3)^{-1}
    lhs = z * ZI(5) - ZI(0, 7)
    assert lhs == (steps[1].z * steps[2].z * steps[3].z).inverse()
    assert steps[3].z == steps[1].z
    for s in steps:
        assert all(s.identities.values())
    assert residual_identity_check(z, steps[2].qpair, steps[1].z * steps[2].z * steps[3].z)
    for n in (1, 2):
        assert mobius_identity_check(z, steps[n].qpair, steps[n + 1].z)


def test_error_bound_values():
    r = covering_radius(E)
    assert error_constant(r) == (ExactReal.sqrt(3) + 1) / 2
    rz = covering_radius(ZI)
    b = error_bound(ZI(0, -2), ZI(5), rz)
    assert b == (1 + ExactReal.sqrt(2)) / 25
    assert error_bound(ZI(5), ZI(2), rz) is None
    assert error_bound(ZI(2), ZI(0, 2), rz) is None


def test_condition_c_examples():
    assert condition_c_check(ZI(1, 1), ZI(1, -1))
    assert condition_c_check(ZI(1, 1), ZI(-1, -1))
    assert not condition_c_check(ZI(0, 1), ZI(2, 0))
    assert condition_c_check(ZI(2), ZI(0, 2))
    assert condition_c_check(E(5, 5), E(-3, 1))
    assert not condition_c_check(ZI(1, 1), ZI(1, 0))


def test_forced_stream_converges_to_1_plus_sqrt2():
    ctx = one_plus_sqrt2()
    rep = expand(ctx, ForcedStream(E, (), (E(2),)), 12, stop_on_period=False)
    assert rep.q_abs_sq[:4] == [1, 4, 25, 144]
    assert rep.monotone
    target = 1 + dsqrt(2)
    errs = [abs(dec(convergent(s).re) - target) for s in rep.steps]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < dec(Fraction(1, 10 ** 8))


def test_error_bounds_certified_in_exact_mode():
    ctx = SurdContext.from_coeffs(E, E(3, 1), E(-2, 5), E(7, -4), select=-1)
    rep = expand(ctx, nearest_integer(E), 60, stop_on_period=False)
    assert rep.errors_ok and rep.identities_ok and rep.condition_c_all and rep.monotone
    assert all(s.error_certified for s in rep.steps if s.error_bound is not None)
    assert all(s.z_gt_one for s in rep.steps[1:])


def test_numeric_mode_certified_errors():
    box = RationalBox.point(Fraction(123, 100), Fraction(77, 100))
    rep = expand(box, nearest_integer(E), 40, precision=256)
    assert len(rep.steps) == 40
    assert rep.errors_ok and rep.monotone and rep.condition_c_all
    bounded = [s for s in rep.steps if s.error_bound is not None]
    assert len(bounded) >= 39 and all(s.error_certified for s in bounded)
    k = (ExactReal.sqrt(3) + 1) / 2
    for s in bounded:
        assert s.error_bound == k * Fraction(1, s.q_abs_sq)


def test_numeric_mode_matches_exact_mode():
    ctx = SurdContext.from_coeffs(E, E(2, 1), E(-3, 4), E(5, -2), select=1)
    exact = expand(ctx, nearest_integer(E), 25, stop_on_period=False)
    b = ctx.root_box(400)
    box = RationalBox(b.re.lo_q, b.re.hi_q, b.im.lo_q, b.im.hi_q)
    num = expand(box, nearest_integer(E), 25, precision=256, cap=4096)
    assert num.quotients == exact.quotients


def test_field_points_expand_finitely():
    rep = expand(RationalBox.point(Fraction(22, 7), Fraction(3, 11)), nearest_integer(ZI), 50)
    assert rep.termination == "finite" and rep.steps[-1].last
    assert rep.identities_ok
    last = rep.steps[-1].qpair
    assert convergent(rep.steps[-1]) == ZI.field(Fraction(22, 7), Fraction(3, 11))
    assert last.q_cur.abs_sq() > 1


def test_tie_resolved_exactly_in_field_mode():
    rep = expand(RationalBox.point(Fraction(1, 2), Fraction(1, 2)), nearest_integer(ZI), 10)
    assert rep.steps[0].a == ZI(0) and rep.steps[0].tie


def test_unresolvable_digit_raises():
    # the second digit of (1+i)/2 over E sits on a cell boundary (z_1 = i(1+sqrt3))
    box = RationalBox.point(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(DigitUnresolved):
        expand(box, nearest_integer(E), 5, precision=64, cap=512)


def test_invalid_source():
    with pytest.raises(TypeError):
        expand(1.5, nearest_integer(E), 3)
