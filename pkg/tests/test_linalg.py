import pytest
from hypothesis import given
from hypothesis import strategies as st

from flc import linalg
from flc.gaussrat import as_gauss

from conftest import gauss


def square(n):
    return st.lists(st.lists(gauss(), min_size=n, max_size=n), min_size=n, max_size=n)


def g(rows):
    return [[as_gauss(x) for x in r] for r in rows]


@given(square(3))
def test_inverse_or_singular(m):
    if linalg.determinant(m):
        inv = linalg.inverse(m)
        assert linalg.matmul(m, inv) == linalg.identity(3, as_gauss(1))
        assert linalg.rank(m) == 3
    else:
        assert linalg.rank(m) < 3
        with pytest.raises(linalg.SingularMatrix):
            linalg.inverse(m)


@given(square(3), square(3))
def test_determinant_is_multiplicative(a, b):
    assert linalg.determinant(linalg.matmul(a, b)) == linalg.determinant(a) * linalg.determinant(b)


@given(st.lists(st.lists(gauss(), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rref_rows_span_the_input(rows):
    R, piv = linalg.rref(rows)
    assert len(R) == len(piv) == linalg.rank(rows)
    for r in rows:
        assert linalg.span_contains(R, r)
    for i, c in enumerate(piv):
        assert R[i][c] == 1


def test_known_values():
    assert linalg.rank(g([[1, 2], [2, 4]])) == 1
    assert linalg.determinant(g([[1, 2], [3, 4]])) == -2


def test_sparse_echelon_membership():
    e = linalg.SparseEchelon()
    e.add({0: as_gauss(1), 2: as_gauss(1)})
    e.add({1: as_gauss(2)})
    assert e.contains({0: as_gauss(3), 1: as_gauss(1), 2: as_gauss(3)})
    assert not e.contains({2: as_gauss(1)})


def test_lower_triangular_solve():
    m = g([[2, 0, 0], [1, 1, 0], [0, 3, 4]])
    v = g([[2, 3, 11]])[0]
    x = linalg.solve_lower(m, v)
    assert [sum(a * b for a, b in zip(row, x)) for row in m] == v
