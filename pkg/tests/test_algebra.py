import pytest
from hypothesis import given
from hypothesis import strategies as st

from flc.algebra import (Algebra, DimensionMismatch, basis_vector, bracket, change_basis, is_filiform,
                         leibniz_violations, lower_central_dims)
from flc.families import build_mu
from flc.gaussrat import as_gauss

from conftest import gauss

ONE = as_gauss(1)


def heisenberg():
    return Algebra(3, [(0, 1, 2, ONE), (1, 0, 2, -ONE)])


def test_heisenberg_is_lie_and_two_step():
    H = heisenberg()
    assert leibniz_violations(H) == []
    assert lower_central_dims(H) == [3, 1, 0]
    assert is_filiform(H)
    # adding an abelian direction keeps the series length but breaks filiformity
    H4 = Algebra(4, [(0, 1, 2, ONE), (1, 0, 2, -ONE)])
    assert lower_central_dims(H4) == [4, 1, 0]
    assert not is_filiform(H4)


def test_right_leibniz_orientation():
    # [e0,e0] = e1, [e1,e0] = e2 is right Leibniz: every triple checks out
    A = Algebra(3, [(0, 0, 1, ONE), (1, 0, 2, ONE)])
    assert leibniz_violations(A) == []
    # the mirrored law [e0,e0] = e1, [e0,e1] = e2 is left Leibniz only
    B = Algebra(3, [(0, 0, 1, ONE), (0, 1, 2, ONE)])
    assert leibniz_violations(B)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_model_filiform(n):
    mu = build_mu(n)
    assert leibniz_violations(mu) == []
    assert lower_central_dims(mu) == [n] + list(range(n - 2, -1, -1))
    assert is_filiform(mu)


@given(st.lists(gauss(nonzero=True), min_size=3, max_size=3), st.lists(gauss(), min_size=3, max_size=3))
def test_change_basis_preserves_the_identity(diag, low):
    H = heisenberg()
    g = [[diag[0], as_gauss(0), as_gauss(0)],
         [low[0], diag[1], as_gauss(0)],
         [low[1], low[2], diag[2]]]
    H2 = change_basis(H, g)
    assert leibniz_violations(H2) == []
    assert lower_central_dims(H2) == [3, 1, 0]


def test_bracket_bilinear():
    H = heisenberg()
    x = [as_gauss(2), as_gauss(1), as_gauss(0)]
    y = [as_gauss(0), as_gauss(3), as_gauss(5)]
    assert bracket(H, x, y).coords == bracket(H, basis_vector(3, 0), basis_vector(3, 1)).scale(as_gauss(6)).coords


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        bracket(heisenberg(), [ONE, ONE], [ONE, ONE, ONE])


def test_json_roundtrip():
    mu = build_mu(6)
    assert Algebra.from_json(mu.to_json()).entries() == mu.entries()
