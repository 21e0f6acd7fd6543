"""Exact linear algebra over a field (GaussRat or gmpy2.mpq).

Elimination is fraction-free in the Bareiss sense: every intermediate entry is
a minor of the input, and the division by the previous pivot is exact.
"""
from __future__ import annotations

from typing import Sequence

__all__ = [
    "SingularMatrix",
    "bareiss_echelon",
    "rank",
    "determinant",
    "inverse",
    "rref",
    "span_contains",
    "is_lower_triangular",
    "solve_lower",
    "matmul",
    "identity",
    "SparseEchelon",
]


class SingularMatrix(ArithmeticError):
    pass


def _zero_like(x):
    return x - x


def bareiss_echelon(rows: Sequence[Sequence]) -> tuple[list[list], list[int], int]:
    """Fraction-free row echelon form.

    Returns (matrix, pivot columns, sign of the row permutation).
    """
    m = [list(r) for r in rows]
    if not m:
        return m, [], 1
    nrows, ncols = len(m), len(m[0])
    prev = None
    pivots: list[int] = []
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                v = piv * row_i[j] - a * row_r[j]
                row_i[j] = v if prev is None else v / prev
            row_i[c] = _zero_like(a)
        # rows above the pivot keep their values; entries left of c are zero
        prev = piv
        pivots.append(c)
        r += 1
    # Bareiss leaves rows below rank as zero already; rows skipped for a
    # zero column were still scaled by earlier pivots, which is harmless.
    return m, pivots, sign


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(bareiss_echelon(rows)[1])


def determinant(mat: Sequence[Sequence]):
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    m, piv, sign = bareiss_echelon(mat)
    if len(piv) < n:
        return _zero_like(mat[0][0])
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def identity(n: int, one, zero=None) -> list[list]:
    zero = _zero_like(one) if zero is None else zero
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, m = len(a), len(b), len(b[0])
    zero = _zero_like(a[0][0])
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(m):
            s = zero
            for t in range(k):
                x = ai[t]
                if x:
                    y = b[t][j]
                    if y:
                        s = s + x * y
            row.append(s)
        out.append(row)
    return out


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with unit pivots (nonzero rows only)."""
    if not rows:
        return [], []
    m, piv, _ = bareiss_echelon(rows)
    m = m[: len(piv)]
    for r in range(len(piv) - 1, -1, -1):
        c = piv[r]
        inv = 1 / m[r][c] if not hasattr(m[r][c], "inverse") else m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(r):
            a = m[i][c]
            if a:
                m[i] = [x - a * y for x, y in zip(m[i], m[r])]
    return m, piv


def span_contains(basis_rows: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not basis_rows:
        return False
    return rank(list(basis_rows) + [list(v)]) == rank(basis_rows)


def inverse(mat: Sequence[Sequence]) -> list[list]:
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    if is_lower_triangular(mat):
        return _lower_inverse(mat)
    one = mat[0][0] ** 0
    zero = _zero_like(one)
    aug = [list(mat[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red]


def is_lower_triangular(mat: Sequence[Sequence]) -> bool:
    return all(not mat[i][j] for i in range(len(mat)) for j in range(i + 1, len(mat)))


def _lower_inverse(mat):
    n = len(mat)
    for i in range(n):
        if not mat[i][i]:
            raise SingularMatrix("matrix is singular")
    one = mat[0][0] ** 0
    zero = _zero_like(one)
    cols = []
    for j in range(n):
        e = [zero] * n
        e[j] = one
        cols.append(solve_lower(mat, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def solve_lower(mat: Sequence[Sequence], v: Sequence, inv_diag: Sequence | None = None) -> list:
    """Forward substitution for a lower-triangular system ``mat * w = v``."""
    n = len(mat)
    zero = _zero_like(v[0])
    w = [zero] * n
    for k in range(n):
        s = v[k]
        row = mat[k]
        for m in range(k):
            a = row[m]
            if a:
                x = w[m]
                if x:
                    s = s - a * x
        if s:
            if inv_diag is not None:
                w[k] = s * inv_diag[k]
            else:
                d = row[k]
                if not d:
                    raise SingularMatrix("matrix is singular")
                w[k] = s / d
    return w


class SparseEchelon:
    """Incremental echelon basis of sparse vectors ({column: value} dicts).

    Each stored row has a unit entry at its leading (largest) column and only
    smaller columns besides, so reduction always terminates.
    """

    def __init__(self):
        self.pivots: dict = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        v = {k: x for k, x in vec.items() if x}
        while v:
            c = max(v)
            row = self.pivots.get(c)
            if row is None:
                return v
            a = v[c]
            for k, x in row.items():
                y = v.get(k)
                y = -a * x if y is None else y - a * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; False when it was already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        c = max(v)
        lead = v[c]
        inv = lead.inverse() if hasattr(lead, "inverse") else 1 / lead
        self.pivots[c] = {k: x * inv for k, x in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)
