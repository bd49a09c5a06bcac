"""Exact polynomial and rational-function arithmetic."""

import pytest
from hypothesis import given, strategies as st

from kahan_aromas.poly import (
    Polynomial,
    RationalFunction,
    divexact,
    rf_substitute,
    rf_substitute_rfs,
    series_in_h,
)
from kahan_aromas.rationals import Rat

NV = 4  # two x-variables plus h, u


def x(i, nv=NV):
    return Polynomial.variable(nv, i)


def const(v, nv=NV):
    return Polynomial.const(nv, v)


def rationals():
    return st.builds(Rat, st.integers(-6, 6), st.integers(1, 5))


@st.composite
def polys(draw, nv=NV, max_terms=5, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_exp)) for _ in range(nv))
        terms[exps] = draw(rationals())
    p = Polynomial.zero(nv)
    for e, c in terms.items():
        p = p + Polynomial.monomial(nv, e, c)
    return p


def test_difference_of_squares():
    assert (x(0) + x(1)) * (x(0) - x(1)) == x(0) ** 2 - x(1) ** 2


def test_partial_derivative():
    assert (x(0) ** 2 * x(1)).partial_derivative(0) == x(0) * x(1) * 2


def test_substitute_polynomials_simultaneous():
    # x <-> y swap must be simultaneous, not sequential
    p = x(0) + x(1) * 2
    q = p.substitute_polynomials({0: x(1), 1: x(0)})
    assert q == x(1) + x(0) * 2


def test_substitution_via_rf_path():
    # x <- x/(1-hx) applied to x^2 gives x^2/(1-hx)^2
    h = x(2)
    den = const(1) - h * x(0)
    num = rf_substitute(x(0) ** 2, [x(0), x(1)], den, 2)
    assert num == x(0) ** 2


@pytest.mark.parametrize(
    "p,clear,expected",
    [
        ("x", 1, "x"),
        ("x2", 2, "x2"),
        ("x+1", 1, "1+x-hx"),
    ],
)
def test_rf_substitute_spec_examples(p, clear, expected):
    nv = 3  # one x plus h, u
    xx = Polynomial.variable(nv, 0)
    h = Polynomial.variable(nv, 1)
    one = Polynomial.const(nv, 1)
    den = one - h * xx
    inputs = {"x": xx, "x2": xx**2, "x+1": xx + one}
    want = {"x": xx, "x2": xx**2, "1+x-hx": one + xx - h * xx}
    assert rf_substitute(inputs[p], [xx], den, clear) == want[expected]


def test_rf_substitute_requires_enough_clearing():
    nv = 3
    xx = Polynomial.variable(nv, 0)
    den = Polynomial.const(nv, 1) - Polynomial.variable(nv, 1) * xx
    with pytest.raises(ValueError):
        rf_substitute(xx**2, [xx], den, 1)


def test_rf_substitute_rfs_demands_shared_denominator():
    nv = 4
    xx, yy = Polynomial.variable(nv, 0), Polynomial.variable(nv, 1)
    one = Polynomial.const(nv, 1)
    good = [RationalFunction(xx, one + xx), RationalFunction(yy, one + xx)]
    assert rf_substitute_rfs(xx + yy, good, 1) == xx + yy
    bad = [RationalFunction(xx, one + xx), RationalFunction(yy, one + yy)]
    with pytest.raises(ValueError):
        rf_substitute_rfs(xx + yy, bad, 1)


@given(polys(), st.integers(0, 2))
def test_rf_substitute_clearing_degree_shift(p, extra):
    h = x(2)
    den = const(1) - h * x(0) + x(1) * Rat(1, 2)
    nums = [x(0) + x(1), x(0) * x(1) + const(1)]
    k = p.x_degree() + extra
    assert rf_substitute(p, nums, den, k + 1) == den * rf_substitute(p, nums, den, k)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(polys())
def test_degree_and_zero_invariants(p):
    assert (p - p).is_zero()
    for key, coeff in p.terms.items():
        assert coeff != 0


def test_series_in_h_geometric():
    nv = 3
    xx, h = Polynomial.variable(nv, 0), Polynomial.variable(nv, 1)
    one = Polynomial.const(nv, 1)
    r = RationalFunction(one, one - h * xx)
    assert r.series_in_h(2) == [one, xx, xx**2]
    r2 = RationalFunction(xx, one - h * xx)
    assert r2.series_in_h(1) == [xx, xx**2]


def test_series_in_h_polynomial_input():
    nv = 3
    h = Polynomial.variable(nv, 1)
    y = Polynomial.variable(nv, 0)
    p = Polynomial.const(nv, 1) + h**2 * y
    assert series_in_h(p, 2) == [Polynomial.const(nv, 1), Polynomial.zero(nv), y]


def test_series_in_h_rejects_vanishing_denominator():
    nv = 3
    h = Polynomial.variable(nv, 1)
    with pytest.raises(ZeroDivisionError):
        series_in_h(RationalFunction(Polynomial.const(nv, 1), h), 2)


@given(polys(max_terms=4, max_exp=2), st.integers(1, 4))
def test_series_in_h_defining_property(num, order):
    h = x(2)
    den = const(1) + h * x(0) - h**2 * x(1)
    r = RationalFunction(num, den)
    coeffs = r.series_in_h(order)
    acc = Polynomial.zero(NV)
    for k, c in enumerate(coeffs):
        acc = acc + c * h**k
    difference = acc * den - num
    for k in range(order + 1):
        assert difference.coefficient_of_h(k).is_zero()


def test_divexact():
    a = (x(0) + x(1)) * (x(0) - x(1) * 2 + const(3))
    assert divexact(a, x(0) + x(1)) == x(0) - x(1) * 2 + const(3)
    with pytest.raises(ValueError):
        divexact(x(0) ** 2 + const(1), x(0) + x(1))


def test_rational_function_cross_equality():
    one = const(1)
    a = RationalFunction(x(0) * x(1), x(0))
    b = RationalFunction(x(1) * x(0) ** 2, x(0) ** 2)
    assert a == b
    assert a != RationalFunction(x(1) + one, one)


def test_polynomial_json_roundtrip():
    p = x(0) ** 2 * Rat(3, 4) - x(1) * Rat(1, 2) + const(5)
    data = p.to_json()
    assert all(isinstance(c, str) for _, c in data)
    assert Polynomial.from_json(data) == p
    assert Polynomial.from_json([], nvars=NV).is_zero()


def test_mixed_variable_universes_rejected():
    with pytest.raises(ValueError):
        x(0) + Polynomial.variable(5, 0)
    with pytest.raises(ValueError):
        Polynomial.monomial(3, (1, 0, 0, 0))
    with pytest.raises(ValueError):
        Polynomial.from_json([[[1, 0], "1"]], nvars=3)
