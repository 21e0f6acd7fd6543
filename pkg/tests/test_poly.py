import pytest
from hypothesis import given
from hypothesis import strategies as st

from flc.gaussrat import GaussRat, as_gauss
from flc.poly import DenominatorVanished, ExprParseError, MissingVariable, MultiPoly, parse_expr, parse_poly

from conftest import gauss

V = ("x", "y", "z")


@st.composite
def polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = tuple(draw(st.integers(0, 2)) for _ in V)
        terms[e] = draw(gauss())
    return MultiPoly(V, terms)


points = st.fixed_dictionaries({v: gauss() for v in V})


@given(polys(), polys(), points)
def test_eval_is_a_ring_homomorphism(p, q, pt):
    assert (p + q).eval(pt) == p.eval(pt) + q.eval(pt)
    assert (p * q).eval(pt) == p.eval(pt) * q.eval(pt)
    assert (p - q).eval(pt) == p.eval(pt) - q.eval(pt)


@given(polys(), polys())
def test_exact_division_inverts_multiplication(p, q):
    if q:
        assert (p * q).exact_div(q) == p


@given(polys())
def test_str_parses_back(p):
    assert parse_poly(str(p), V) == p


def test_parse_and_normalize():
    assert parse_poly("(x+y)^2 - 2*x*y", V) == parse_poly("x^2 + y^2", V)
    assert str(parse_poly("2*x + 4", V).monic()) == "x + 2"
    assert parse_poly("x*y^2", V).total_degree() == 3
    assert parse_poly("i*x", V).eval({"x": GaussRat(0, 1), "y": 0, "z": 0}) == -1


def test_inexact_division_returns_none():
    assert parse_poly("x^2 - y^2", V).exact_div(parse_poly("x + 2", V)) is None


def test_ratfunc_eval_and_vanishing_denominator():
    r = parse_expr("x/(y - 1)", V)
    assert r.eval({"x": as_gauss(2), "y": as_gauss(3), "z": 0}) == 1
    with pytest.raises(DenominatorVanished):
        r.eval({"x": as_gauss(1), "y": as_gauss(1), "z": 0})


def test_missing_variable():
    with pytest.raises(MissingVariable):
        parse_poly("x + y", V).eval({"x": as_gauss(1)})


@pytest.mark.parametrize("text", ["x +", "(x", "w", "x ^ y"])
def test_parse_errors(text):
    with pytest.raises(ExprParseError):
        parse_expr(text, V)
