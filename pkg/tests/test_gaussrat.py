from fractions import Fraction

import pytest
from hypothesis import given

from flc.gaussrat import DivisionByZero, GaussRat, as_gauss, format_gauss, parse_gauss

from conftest import gauss

I = GaussRat(0, 1)


def test_i_squared():
    assert I * I == -1
    assert I ** 4 == 1
    assert I ** -1 == -I


@given(gauss(), gauss(), gauss())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@given(gauss(nonzero=True))
def test_inverse(a):
    assert a * a.inverse() == 1
    assert (1 / a) * a == 1


@given(gauss())
def test_format_parse_roundtrip(a):
    assert parse_gauss(format_gauss(a)) == a
    assert hash(parse_gauss(str(a))) == hash(a)


@given(gauss())
def test_norm_is_conjugate_product(a):
    assert a * a.conjugate() == as_gauss(a.norm())


def test_canonical_fractions():
    assert as_gauss("2/4") == GaussRat(Fraction(1, 2))
    assert str(as_gauss("6/4")) == "3/2"
    assert str(GaussRat(0, -1)) == "-i"
    assert str(parse_gauss("1/2-3i")) == "1/2-3i"


def test_equality_with_ints():
    assert GaussRat(3) == 3
    assert GaussRat(3, 1) != 3
    assert not GaussRat(0)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        GaussRat(1) / 0
    with pytest.raises(ZeroDivisionError):
        GaussRat(0).inverse()


@pytest.mark.parametrize("text", ["", "1//2", "i i", "abc"])
def test_parse_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_gauss(text)
