"""Tests for core/poly.py"""
from fractions import Fraction

import pytest

from bell_rogalski.core.errors import InexactDivisionError, ParseError, PointError, RingError, RingMismatchError
from bell_rogalski.core.poly import Polynomial, RingSpec, eval_at, monomial_key, sorted_polys, to_fraction


def _make_ring():
    return RingSpec.polynomial("x", "y")


def _make_laurent():
    return RingSpec.laurent("u", "v")


def test_ring_rejects_duplicate_names():
    with pytest.raises(RingError):
        RingSpec(("x", "x"), (False, False))


def test_ring_rejects_unknown_order():
    with pytest.raises(RingError):
        RingSpec(("x",), (False,), "grlex")


def test_ring_describe_marks_invertible_variables():
    ring = RingSpec(("u", "x"), (True, False))
    assert ring.describe() == "Q[u^±1, x]"
    assert ring.to_dict()["invertible"] == ["u"]


def test_canonical_text_degrevlex():
    R = _make_ring()
    f = R.parse("1 - x + 3/2*x^2*y")
    assert f.to_text() == "3/2*x^2*y - x + 1"


def test_text_round_trip():
    R = _make_ring()
    f = R.parse("(x - 2*y)^3 + 7/3")
    assert R.parse(f.to_text()) == f


def test_zero_polynomial_text():
    R = _make_ring()
    assert R.parse("x - x").to_text() == "0"
    assert R.zero().is_zero()


def test_unknown_symbol_is_parse_error():
    R = _make_ring()
    with pytest.raises(ParseError):
        R.parse("x + z")


def test_negative_power_of_polynomial_variable_is_parse_error():
    R = _make_ring()
    with pytest.raises(ParseError):
        R.parse("x/y")


def test_negative_exponent_rejected_on_construction():
    R = _make_ring()
    with pytest.raises(RingError):
        Polynomial(R, {(-1, 0): 1})


def test_params_substitute_rationals():
    R = _make_ring()
    f = R.parse("q*x + r", {"q": Fraction(3), "r": Fraction(1, 2)})
    assert f == R.var("x").scale(3) + Fraction(1, 2)


def test_arithmetic():
    R = _make_ring()
    x, y = R.gens()
    assert (x + y) * (x - y) == x * x - y * y
    assert (x + 1) ** 2 == x * x + x.scale(2) + 1
    assert 2 * x == x + x
    assert 1 - x == -(x - 1)
    assert x.is_monomial()
    assert (x * y).scale(3).is_monomial()
    assert not (x + y).is_monomial()


def test_ring_mismatch():
    R = _make_ring()
    S = RingSpec.polynomial("x", "y", "z")
    with pytest.raises(RingMismatchError):
        R.var("x") + S.var("x")


def test_laurent_units_and_inverse():
    L = _make_laurent()
    f = L.parse("3*u^-1*v")
    assert f.is_unit()
    assert f.inverse_unit() == L.parse("1/3*u*v^-1")
    assert f ** -1 == f.inverse_unit()
    assert not L.parse("u + 1").is_unit()


def test_negative_power_of_non_unit_raises():
    R = _make_ring()
    with pytest.raises(RingError):
        R.parse("x + 1") ** -1


def test_exact_divide():
    R = _make_ring()
    f = R.parse("x^2 - y^2")
    assert f.exact_divide(R.parse("x - y")) == R.parse("x + y")


def test_exact_divide_inexact_raises():
    R = _make_ring()
    with pytest.raises(InexactDivisionError):
        R.parse("x^2 + 1").exact_divide(R.parse("x"))


def test_exact_divide_laurent_content():
    L = _make_laurent()
    f = L.parse("u^-2*v + u^-1")
    g = L.parse("u*v + u^2")
    assert f.exact_divide(g) == L.parse("u^-3")


def test_strip_content():
    L = _make_laurent()
    assert L.parse("u^2*v + u^3").strip_content() == L.parse("v + u")


def test_evaluate():
    R = _make_ring()
    f = R.parse("x^2*y - 3")
    assert f.evaluate((Fraction(1, 2), Fraction(3))) == Fraction(-9, 4)


def test_eval_at_accepts_plain_values():
    L = _make_laurent()
    assert eval_at(L.parse("u + 1"), (-1, 1)) == 0
    assert eval_at(L.one(), ("2/3", 5)) == 1
    Z = RingSpec.polynomial("z")
    assert eval_at(Z.parse("(z + 1)*(z + 2)"), (-2,)) == 0


def test_evaluate_zero_on_invertible_variable():
    L = _make_laurent()
    with pytest.raises(PointError):
        L.parse("u + v").evaluate((Fraction(0), Fraction(1)))


def test_substitute():
    R = _make_ring()
    x, y = R.gens()
    f = R.parse("x*y + 1")
    assert f.substitute([y, x + 1], R) == R.parse("x*y + y + 1")


def test_leading_term_depends_on_order():
    R = _make_ring()
    f = R.parse("x + y^2")
    assert f.leading_term()[0] == (0, 2)
    assert Polynomial(R.with_order("lex"), f.terms).leading_term()[0] == (1, 0)


def test_monomial_key_rejects_unknown_order():
    with pytest.raises(RingError):
        monomial_key("weighted")


def test_total_degree_counts_negative_exponents():
    L = _make_laurent()
    assert L.parse("u^-2*v + 1").total_degree() == 3


def test_sympy_bridge():
    R = _make_ring()
    f = R.parse("2/3*x^3 - x*y + 5")
    assert Polynomial.from_expr(R, f.as_expr()) == f


def test_sorted_polys_is_deterministic():
    R = _make_ring()
    polys = [R.parse("y"), R.parse("x^2"), R.parse("x")]
    assert [p.to_text() for p in sorted_polys(polys)] == ["x^2", "x", "y"]


@pytest.mark.parametrize("value,expected", [
    ("3/2", Fraction(3, 2)),
    (4, Fraction(4)),
    (0.1, Fraction(1, 10)),
    (Fraction(-2, 6), Fraction(-1, 3)),
])
def test_to_fraction(value, expected):
    assert to_fraction(value) == expected


@pytest.mark.parametrize("value", [True, "abc", "1/0", None])
def test_to_fraction_rejects(value):
    with pytest.raises(ParseError):
        to_fraction(value)
