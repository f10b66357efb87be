from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ccf.algorithms import ForcedStream, nearest_integer
from ccf.exact_surd import SurdContext
from ccf.lagrange import (
    NoPeriodFound, canonical, cycle_quadratic, detect_period, exact_expand_with_triples,
    finite_value_check, round_trip, same_period, surd_from_period,
)
from ccf.rings import EISENSTEIN as E, GAUSSIAN as ZI, jay


def i_sqrt2():
    return SurdContext.from_coeffs(ZI, ZI(1), ZI(0), ZI(2), select="+im")


def one_plus_sqrt2():
    return SurdContext.from_coeffs(E, E(1), E(-2), E(-1), select="+re")


def test_triples_for_i_sqrt2():
    rows = list(exact_expand_with_triples(i_sqrt2(), nearest_integer(ZI), 12))
    step0, t0, _ = rows[0]
    assert step0.a == ZI(0, 1) and t0.A == ZI(1)
    for n, (step, t, verdict) in enumerate(rows):
        assert t.discriminant() == ZI(-8)
        assert all(verdict.values())
        if n:
            assert t.C == rows[n - 1][1].A


def test_triples_cycle_for_fixed_point():
    ctx = one_plus_sqrt2()
    rows = list(exact_expand_with_triples(ctx, ForcedStream(E, (), (E(2),)), 6))
    # z_n = 1 + sqrt2 for every n, so the triple is the same up to the sign (-1)^n
    for (_, t, _), (_, u, _) in zip(rows, rows[1:]):
        assert (u.A, u.B, u.C) in {(t.A, t.B, t.C), (-t.A, -t.B, -t.C)}
    assert all(all(v.values()) for _, _, v in rows)


def test_detect_period_examples():
    res = detect_period(i_sqrt2(), nearest_integer(ZI))
    assert (res.m, res.k) == (1, 2)
    assert res.preperiod == (ZI(0, 1),) and res.cycle == (ZI(0, -2), ZI(0, 2))
    assert res.hypothesis_verified and res.triples_ok
    assert res.distinct_values <= res.m + res.k

    fixed = detect_period(one_plus_sqrt2(), ForcedStream(E, (), (E(2),)))
    assert (fixed.m, fixed.k) == (0, 1) and fixed.cycle == (E(2),)


def test_detect_period_budget():
    ctx = SurdContext.from_coeffs(E, E(7, 3), E(-11, 5), E(13, -9), select=1)
    with pytest.raises(NoPeriodFound, match="no period found within budget"):
        detect_period(ctx, nearest_integer(E), max_steps=1)


def test_cycle_quadratic_sign():
    # q_{k-1} w^2 + (q_{k-2} - p_{k-1}) w - p_{k-2} = 0 for w = [cycle, cycle, ...]
    a, b, c = cycle_quadratic((E(2),))
    assert (a, b, c) == (E(1), E(-2), E(-1))


def test_surd_from_period_examples():
    ctx = surd_from_period((), (E(2),), E)
    assert ctx.same_polynomial(one_plus_sqrt2())
    assert ctx.z == one_plus_sqrt2().z

    back = surd_from_period((ZI(0, 1),), (ZI(0, -2), ZI(0, 2)), ZI)
    assert back.same_polynomial(i_sqrt2()) and back.z == i_sqrt2().z


def test_surd_from_period_rejections():
    # w = j + 1/w has discriminant j^2 + 4 = 1, so w is rho or omega, both in K
    with pytest.raises(ValueError, match="element of K"):
        surd_from_period((), (jay(),), E)
    with pytest.raises(ValueError, match="nonempty"):
        surd_from_period((E(1),), (), E)
    with pytest.raises(ValueError, match=r"\|a\| <= 1"):
        surd_from_period((E(0),), (E(1),), E)
    with pytest.raises(ValueError, match="not in"):
        surd_from_period((), (ZI(2),), E)


def test_canonical_form():
    a, b, c = E(2), E(3), jay()
    assert canonical((a,), (b, c, b, c)) == ((a,), (b, c))
    assert canonical((a, c), (b, c)) == ((a,), (c, b))
    assert same_period(((), (b, c)), ((b,), (c, b)))
    assert not same_period(((), (b, c)), ((), (c, b)))


def test_round_trip_i_sqrt2():
    rt = round_trip(i_sqrt2(), nearest_integer(ZI))
    assert rt["same_context"] and rt["same_period"] and not rt["reexpanded"]


def test_finite_value_check():
    ctx = i_sqrt2()
    zs = [s.z for s in detect_period(ctx, nearest_integer(ZI)).report.steps]
    assert finite_value_check(zs + zs) == len(zs)


quot = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(lambda t: t[0] ** 2 + t[0] * t[1] + t[1] ** 2 >= 3)


@settings(max_examples=25)
@given(st.lists(quot, max_size=2), st.lists(quot, min_size=1, max_size=3))
def test_stream_round_trip(pre, cyc):
    pre = tuple(E(*x) for x in pre)
    cyc = tuple(E(*x) for x in cyc)
    try:
        ctx = surd_from_period(pre, cyc, E)
    except ValueError:
        return  # the stream names an element of K
    res = detect_period(ctx, ForcedStream(E, pre, cyc), 50)
    assert same_period((res.preperiod, res.cycle), (pre, cyc))
