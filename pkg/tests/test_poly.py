from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpfaff.poly import (STD, Laurent, MultiPoly, TruncatedSeries, VarTable, parse_point, parse_poly,
                         series_inv_one_minus, series_inverse)

VT = VarTable.of("a", "b", "c")
a, b, c = VT.gens("a b c")

coeffs = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))
monos = st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(monos, coeffs, max_size=5).map(lambda d: MultiPoly(VT, d))
points = st.fixed_dictionaries({n: st.fractions(min_value=-4, max_value=4, max_denominator=5) for n in "abc"})


@given(polys, polys, polys)
@settings(max_examples=60)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == VT.zero()
    assert p * VT.one() == p


@given(polys, polys, points)
@settings(max_examples=60)
def test_evaluation_is_a_ring_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys, polys, st.integers(0, 6))
@settings(max_examples=60)
def test_truncation_commutes_with_products(p, q, cap):
    assert (TruncatedSeries(p, cap) * TruncatedSeries(q, cap)).body == (p * q).truncate(cap)
    assert (TruncatedSeries(p, cap) + TruncatedSeries(q, cap)).body == (p + q).truncate(cap)


@given(polys, st.integers(0, 6))
@settings(max_examples=40)
def test_series_inverse_is_an_inverse(p, cap):
    s = TruncatedSeries(1 + p * a, cap)
    one = s * series_inverse(s)
    assert one.body == VT.one()


def test_geometric_series():
    s = series_inv_one_minus(a * b, 5)
    assert s.body == 1 + a * b + (a * b) ** 2
    with pytest.raises(ValueError):
        series_inv_one_minus(1 + a, 5)


def test_canonical_render():
    p = parse_poly("1+a(1+b)z+abcz^2")
    assert p.render() == "1 + a*z + a*b*z + a*b*c*z^2"
    assert parse_poly("0").render() == "0"
    # terms are joined by " + " even when a coefficient is negative
    assert (-2 * STD.var("a") + Fraction(1, 3)).render() == "1/3 + -2*a"
    assert (STD.var("b") ** 2 - STD.var("a")).render() == "-a + b^2"


def test_json_roundtrip():
    p = parse_poly("3+a^2b-7cdz") * Fraction(1, 2)
    obj = p.to_json_obj()
    assert {"num", "den", "vars"} <= set(obj[0])
    assert MultiPoly.from_json_obj(STD, obj) == p


def test_parse_point():
    assert parse_point("x1=2, x2=-3/4") == {"x1": Fraction(2), "x2": Fraction(-3, 4)}
    with pytest.raises(ValueError):
        parse_point("x1")


def test_laurent_keeps_shift():
    z, q = STD.gens("z a")
    L = Laurent.monomial(STD, 1, z=-2) * Laurent(z * z * (1 + q))
    assert L.shift == (0,) * len(STD)
    assert L.poly == 1 + q
