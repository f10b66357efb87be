from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ccf.algorithms import ForcedStream, nearest_integer
from ccf.cf_core import expand
from ccf.exact_surd import SurdContext
from ccf.growth import NINE_FOURTHS, growth_check, half_coordinates, succession_check
from ccf.rings import EISENSTEIN as E, GAUSSIAN as ZI, jay, rho


def test_half_coordinates():
    assert half_coordinates(jay()) == (0, 2)
    assert half_coordinates(E(2)) == (4, 0)
    assert half_coordinates(E(0, 1)) == (1, 1)


def test_succession_examples():
    j = jay()
    v = succession_check(j, -2 * j)
    assert (v.rule, v.k, v.x, v.y, v.ok) == ("j", 0, 0, -4, True)
    v = succession_check(j, j)
    assert (v.x, v.y, v.ok) == (0, 2, False)
    v = succession_check(E(2), E(-2))
    assert (v.rule, v.x, v.ok) == ("2", -4, False)
    v = succession_check(E(3), E(-2))
    assert v.rule == "none" and v.ok
    with pytest.raises(ValueError):
        succession_check(ZI(2), ZI(2))


def test_succession_is_rotation_invariant():
    j = jay()
    for k in range(6):
        r = rho() ** k
        a = succession_check(j * r, E(-1, -2) * r.conj() * 1)
        b = succession_check(j, E(-1, -2))
        assert a.k == k and (a.x, a.y, a.ok) == (b.x, b.y, b.ok)


def test_fixed_point_stream_growth():
    ctx = SurdContext.from_coeffs(E, E(1), E(-2), E(-1), select="+re")
    rep = expand(ctx, ForcedStream(E, (), (E(2),)), 10, stop_on_period=False)
    qs = rep.q_abs_sq
    for n in range(1, len(qs) - 1):
        assert qs[n + 1] >= 25 * qs[n - 1]
    with pytest.raises(ValueError, match="nearest-integer"):
        growth_check(rep)


def test_growth_refuses_other_rings():
    ctx = SurdContext.from_coeffs(ZI, ZI(1), ZI(0), ZI(2), select="+im")
    rep = expand(ctx, nearest_integer(ZI), 6, stop_on_period=False)
    with pytest.raises(ValueError, match="Eisenstein"):
        growth_check(rep)


coeff = st.tuples(st.integers(-12, 12), st.integers(-12, 12))


@settings(max_examples=30)
@given(coeff.filter(lambda t: t != (0, 0)), coeff, coeff, st.sampled_from([1, -1]))
def test_growth_on_random_surds(a, b, c, branch):
    try:
        ctx = SurdContext.from_coeffs(E, E(*a), E(*b), E(*c), select=branch)
    except ValueError:
        return
    rep = expand(ctx, nearest_integer(E), 40, stop_on_period=False)
    g = growth_check(rep)
    assert g.ok, g.violations()
    for row in g.rows:
        assert 4 * row.ratio_sq.numerator > 9 * row.ratio_sq.denominator
    if g.min_ratio_sq is not None:
        assert g.min_ratio_sq > NINE_FOURTHS


def test_csv_shape():
    ctx = SurdContext.from_coeffs(E, E(3, 1), E(-2, 5), E(7, -4), select=-1)
    g = growth_check(expand(ctx, nearest_integer(E), 20, stop_on_period=False))
    lines = g.to_csv().splitlines()
    assert lines[0] == "n,ratio_sq,remark63_bound_sq,succession_rule_applied"
    assert len(lines) == len(g.rows) + 1
    for line in lines[1:]:
        n, ratio, _, rule = line.split(",")
        assert Fraction(ratio) > NINE_FOURTHS
        assert rule == "none" or rule.endswith(":pass")
