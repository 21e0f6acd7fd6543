"""Structure-constant algebras on a fixed basis e_0 .. e_{n-1}.

Entries may be any commutative ring elements supporting ``+ - *`` and
truthiness (GaussRat, gmpy2.mpq, MultiPoly). Rank-based operations need a
field and are only used with GaussRat / mpq entries.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .gaussrat import ONE, ZERO, GaussRat, as_gauss
from . import linalg
from .linalg import SingularMatrix

__all__ = [
    "Algebra",
    "Vec",
    "DimensionMismatch",
    "SingularMatrix",
    "bracket",
    "leibniz_violations",
    "lower_central_dims",
    "is_filiform",
    "change_basis",
    "basis_vector",
]


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Vec:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator:
        return iter(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __len__(self) -> int:
        return len(self.coords)

    def __bool__(self) -> bool:
        return any(self.coords)

    def __add__(self, other: "Vec") -> "Vec":
        _check_dims(self, other)
        return Vec(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Vec") -> "Vec":
        _check_dims(self, other)
        return Vec(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Vec":
        return Vec(-a for a in self.coords)

    def scale(self, c) -> "Vec":
        return Vec(c * a for a in self.coords)

    def __rmul__(self, c) -> "Vec":
        return self.scale(c)

    def support(self) -> list[int]:
        return [k for k, a in enumerate(self.coords) if a]

    def __str__(self) -> str:
        parts = [f"{c}*e{k}" for k, c in enumerate(self.coords) if c]
        return " + ".join(parts) if parts else "0"


def basis_vector(n: int, i: int, one=ONE) -> Vec:
    zero = one - one
    return Vec(one if k == i else zero for k in range(n))


def _check_dims(x, y):
    if len(x) != len(y):
        raise DimensionMismatch(f"dimension {len(x)} vs {len(y)}")


class Algebra:
    """Bilinear bracket given by gamma[i][j][k] = coefficient of e_k in [e_i, e_j].

    Stored sparsely; ``gamma`` materialises the dense tensor on demand.
    """

    __slots__ = ("dim", "_table", "_zero", "_rows")

    def __init__(self, dim: int, entries: Iterable[tuple[int, int, int, object]] = (), zero=ZERO):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self._zero = zero
        table: dict[tuple[int, int], dict[int, object]] = {}
        for i, j, k, v in entries:
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise DimensionMismatch(f"index {idx} out of range for dim {dim}")
            if not v:
                continue
            slot = table.setdefault((i, j), {})
            s = slot.get(k)
            s = v if s is None else s + v
            if s:
                slot[k] = s
            else:
                del slot[k]
                if not slot:
                    del table[(i, j)]
        self._table = table
        self._rows = None

    # -- construction helpers -------------------------------------------------
    @classmethod
    def from_dense(cls, gamma: Sequence, zero=ZERO) -> "Algebra":
        n = len(gamma)
        ent = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    v = gamma[i][j][k]
                    if v:
                        ent.append((i, j, k, v))
        return cls(n, ent, zero)

    @classmethod
    def zero_algebra(cls, n: int) -> "Algebra":
        return cls(n, ())

    # -- access ---------------------------------------------------------------
    @property
    def zero(self):
        return self._zero

    def entries(self) -> list[tuple[int, int, int, object]]:
        """Nonzero structure constants, sorted by (i, j, k)."""
        out = []
        for (i, j), slot in sorted(self._table.items()):
            for k in sorted(slot):
                out.append((i, j, k, slot[k]))
        return out

    def coeff(self, i: int, j: int, k: int):
        return self._table.get((i, j), {}).get(k, self._zero)

    def product(self, i: int, j: int) -> dict[int, object]:
        """[e_i, e_j] as a sparse dict k -> coefficient (do not mutate)."""
        return self._table.get((i, j), {})

    @property
    def gamma(self) -> list[list[list]]:
        n = self.dim
        g = [[[self._zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), slot in self._table.items():
            for k, v in slot.items():
                g[i][j][k] = v
        return g

    def rows(self) -> list[list[tuple[int, int, object]]]:
        """For each i, the list of (j, k, v) with [e_i, e_j] having v at e_k."""
        if self._rows is None:
            rows: list[list] = [[] for _ in range(self.dim)]
            for i, j, k, v in self.entries():
                rows[i].append((j, k, v))
            self._rows = rows
        return self._rows

    def map_entries(self, fn, zero=None) -> "Algebra":
        z = self._zero if zero is None else zero
        return Algebra(self.dim, ((i, j, k, fn(v)) for i, j, k, v in self.entries()), z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.entries() == other.entries()

    def __hash__(self):
        return hash((self.dim, tuple((i, j, k, v) for i, j, k, v in self.entries())))

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, nnz={len(self.entries())})"

    # -- JSON -------------------------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [{"i": i, "j": j, "k": k, "v": str(v)} for i, j, k, v in self.entries()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Algebra":
        if not isinstance(obj, dict) or "dim" not in obj:
            raise ValueError("algebra JSON needs a 'dim' field")
        n = obj["dim"]
        if not isinstance(n, int) or n < 1:
            raise ValueError("'dim' must be a positive integer")
        ent = []
        for e in obj.get("entries", []):
            try:
                i, j, k = e["i"], e["j"], e["k"]
                v = as_gauss(str(e["v"]))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"bad algebra entry {e!r}") from exc
            if not all(isinstance(x, int) for x in (i, j, k)):
                raise ValueError(f"bad algebra entry {e!r}")
            ent.append((i, j, k, v))
        return cls(n, ent)

    @classmethod
    def from_json(cls, text: str) -> "Algebra":
        return cls.from_json_obj(json.loads(text))


def _coords(x, n: int) -> Sequence:
    c = x.coords if isinstance(x, Vec) else x
    if len(c) != n:
        raise DimensionMismatch(f"vector of length {len(c)} in a {n}-dimensional algebra")
    return c


def bracket_coords(A: Algebra, x: Sequence, y: Sequence) -> list:
    """Bracket on raw coordinate sequences (no dimension checks)."""
    n = A.dim
    out = [A.zero] * n
    rows = A.rows()
    for a in range(n):
        xa = x[a]
        if not xa:
            continue
        for b, k, v in rows[a]:
            yb = y[b]
            if yb:
                out[k] = out[k] + xa * yb * v
    return out


def bracket(A: Algebra, x, y) -> Vec:
    n = A.dim
    return Vec(bracket_coords(A, _coords(x, n), _coords(y, n)))


def _sparse_add(acc: dict, vec: dict, scale=None, sign: int = 1):
    for k, v in vec.items():
        t = v if scale is None else scale * v
        if sign < 0:
            t = -t
        s = acc.get(k)
        s = t if s is None else s + t
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _bracket_sparse_left(A: Algebra, vec: dict, j: int) -> dict:
    """[vec, e_j] for sparse vec."""
    out: dict = {}
    for a, c in vec.items():
        p = A.product(a, j)
        if p:
            _sparse_add(out, p, c)
    return out


def _bracket_sparse_right(A: Algebra, i: int, vec: dict) -> dict:
    """[e_i, vec] for sparse vec."""
    out: dict = {}
    for b, c in vec.items():
        p = A.product(i, b)
        if p:
            _sparse_add(out, p, c)
    return out


def leibniz_violations(A: Algebra) -> list[tuple[int, int, int, Vec]]:
    """Basis triples where [x,[y,z]] - [[x,y],z] + [[x,z],y] is nonzero."""
    n = A.dim
    out = []
    for i in range(n):
        for j in range(n):
            pij = A.product(i, j)
            for k in range(n):
                acc: dict = {}
                pjk = A.product(j, k)
                if pjk:
                    _sparse_add(acc, _bracket_sparse_right(A, i, pjk))
                if pij:
                    _sparse_add(acc, _bracket_sparse_left(A, pij, k), sign=-1)
                pik = A.product(i, k)
                if pik:
                    _sparse_add(acc, _bracket_sparse_left(A, pik, j))
                if acc:
                    defect = [A.zero] * n
                    for kk, v in acc.items():
                        defect[kk] = v
                    out.append((i, j, k, Vec(defect)))
    return out


def lower_central_dims(A: Algebra) -> list[int]:
    """dim L^1, dim L^2, ... with L^{k+1} = [L^k, L], stopping at stabilisation."""
    n = A.dim
    one = A.zero ** 0
    current = [[one if r == c else A.zero for c in range(n)] for r in range(n)]
    dims = [n]
    while True:
        gens = []
        for x in current:
            for j in range(n):
                y = [A.zero] * n
                y[j] = one
                v = bracket_coords(A, x, y)
                if any(v):
                    gens.append(v)
        if gens:
            basis, _ = linalg.rref(gens)
        else:
            basis = []
        d = len(basis)
        if d == dims[-1]:
            break
        dims.append(d)
        current = basis
        if d == 0:
            break
    return dims


def is_filiform(A: Algebra) -> bool:
    n = A.dim
    expected = [n] + [n - i for i in range(2, n + 1)]
    return lower_central_dims(A) == expected


def transform_table(A: Algebra, cols: Sequence[Sequence], pairs=None) -> dict[tuple[int, int], dict[int, object]]:
    """Structure constants of A in the basis whose i-th vector is cols[i].

    ``cols`` must form a lower-triangular matrix (cols[i][r] == 0 for r < i).
    Returns the sparse table {(i, j): {k: v}}, restricted to ``pairs`` if given.
    """
    n = A.dim
    g = [[cols[c][r] for c in range(n)] for r in range(n)]
    diag = [g[k][k] for k in range(n)]
    for d in diag:
        if not d:
            raise SingularMatrix("basis matrix is singular")
    one = diag[0] ** 0
    inv_diag = [one / d for d in diag]
    supports = [[r for r in range(n) if cols[i][r]] for i in range(n)]
    rows = A.rows()
    zero = A.zero
    table: dict = {}
    if pairs is None:
        pairs = [(i, j) for i in range(n) for j in range(n)]
    for i, j in pairs:
        x = cols[i]
        sx = supports[i]
        y = cols[j]
        v = None
        for a in sx:
            xa = x[a]
            for b, k, c in rows[a]:
                yb = y[b]
                if yb:
                    if v is None:
                        v = [zero] * n
                    v[k] = v[k] + xa * yb * c
        if v is None or not any(v):
            continue
        w = linalg.solve_lower(g, v, inv_diag)
        slot = {k: val for k, val in enumerate(w) if val}
        if slot:
            table[(i, j)] = slot
    return table


def change_basis(A: Algebra, g: Sequence[Sequence]) -> Algebra:
    """Law (g * lambda)(x, y) = g^{-1} lambda(g x, g y); columns of g are the new basis."""
    n = A.dim
    if len(g) != n or any(len(r) != n for r in g):
        raise DimensionMismatch("basis matrix has the wrong shape")
    g = [[as_gauss(v) if not isinstance(v, type(A.zero)) else v for v in r] for r in g]
    cols = [[g[r][c] for r in range(n)] for c in range(n)]
    if linalg.is_lower_triangular(g):
        table = transform_table(A, cols)
        ent = [(i, j, k, v) for (i, j), slot in table.items() for k, v in slot.items()]
        return Algebra(n, ent, A.zero)
    gi = linalg.inverse(g)
    ent = []
    for i in range(n):
        for j in range(n):
            v = bracket_coords(A, cols[i], cols[j])
            if not any(v):
                continue
            for k in range(n):
                s = A.zero
                row = gi[k]
                for m in range(n):
                    if row[m] and v[m]:
                        s = s + row[m] * v[m]
                if s:
                    ent.append((i, j, k, s))
    return Algebra(n, ent, A.zero)
