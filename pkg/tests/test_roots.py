from hypothesis import given

from flc.gaussrat import GaussRat, as_gauss
from flc.roots import gauss_roots, poly_gauss_roots

from conftest import gauss


@given(gauss(nonzero=True))
def test_square_root_of_a_square(w):
    roots = gauss_roots(w * w, 2)
    assert set(roots) == {w, -w}


@given(gauss(nonzero=True))
def test_fourth_roots_include_the_unit_multiples(w):
    roots = set(gauss_roots(w ** 4, 4))
    assert roots == {w, -w, w * GaussRat(0, 1), -w * GaussRat(0, 1)}


def test_no_root_outside_the_field():
    assert gauss_roots(as_gauss(2), 2) == []
    assert gauss_roots(as_gauss(-1), 2) == [GaussRat(0, 1), GaussRat(0, -1)]


def _expand(roots, extra=()):
    p = [as_gauss(1)]
    for r in roots:
        p = [a - r * b for a, b in zip([as_gauss(0)] + p, p + [as_gauss(0)])]
    for q in extra:
        out = [as_gauss(0)] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
        p = out
    return p


@given(gauss(), gauss(), gauss())
def test_polynomial_roots_are_recovered(a, b, c):
    # x^2 + 2 contributes two roots outside Q(i)
    p = _expand([a, b, c], extra=[[as_gauss(2), as_gauss(0), as_gauss(1)]])
    assert set(poly_gauss_roots(p)) == {a, b, c}


def test_polynomial_roots_scaled_coefficients():
    p = [as_gauss(x) * 7 for x in _expand([as_gauss("3/2"), GaussRat("1/3", "1/3")])]
    assert poly_gauss_roots(p) == [as_gauss("3/2"), GaussRat("1/3", "1/3")]
