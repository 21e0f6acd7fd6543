"""Symbolic derivation of the constraints behind the unified TLb tables.

The pre-unification tables carry free symbols a_ij, b_ij. Expanding the
Leibniz identity on every basis triple gives polynomial conditions, which are
compared with the reference relations by membership in the degree <= 2 part
of the ideal each side generates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .algebra import Algebra, leibniz_violations
from .families import normalize_family
from .gaussrat import ONE, ZERO
from .linalg import SparseEchelon, rank
from .poly import MultiPoly, parse_poly

__all__ = [
    "RAW_VARIABLES",
    "LEMMA_ITEMS",
    "raw_table",
    "derive_constraints",
    "compare_with_lemma",
    "ConstraintReport",
]

RAW_VARIABLES = {
    "TLb7": ("b00", "b01", "b11", "a14", "a15", "b12", "b13", "b14", "a25", "b23", "b15", "b24"),
    "TLb8": ("b00", "b01", "b11", "a14", "a15", "a16", "b12", "b13", "b14", "b15", "a26", "b23", "b24", "b34"),
}

# (label, relation text) per family
LEMMA_ITEMS = {
    "TLb7": [("1", "b13 - a15"), ("2", "b14 - a14 + b23"), ("3a", "b15"), ("3b", "b24"), ("3c", "a25")],
    "TLb8": [("1", "b13 - a16"), ("2", "b14 - a15 + b23"), ("3", "b24 - a26"), ("4", "b15 - a14 + 2*a26"),
             ("5", "b34*(a26 + 2*a14)")],
}

VARIANTS = ("corrected", "as_printed")


def raw_table(family: str, variant: str = "corrected") -> Algebra:
    """The pre-unification table with symbolic entries.

    For TLb8 the printed [e2,e4] lands on e6; ``corrected`` puts it on e7,
    which is what the unified table needs.
    """
    fam = normalize_family(family)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    names = RAW_VARIABLES[fam]
    v = {n: MultiPoly.var(n, names) for n in names}
    one = MultiPoly.const(ONE, names)
    zero = MultiPoly.const(ZERO, names)
    ent = []

    def anti(i, j, vec):
        for k, x in vec.items():
            ent.append((i, j, k, x))
            ent.append((j, i, k, -x))

    if fam == "TLb7":
        top = 6
        for i in range(1, 6):
            ent.append((i, 0, i + 1, one))
        for i in range(2, 6):
            ent.append((0, i, i + 1, -one))
        ent += [(0, 0, top, v["b00"]), (0, 1, 2, -one), (0, 1, top, v["b01"]), (1, 1, top, v["b11"])]
        anti(1, 2, {4: v["a14"], 5: v["a15"], 6: v["b12"]})
        anti(1, 3, {5: v["a14"], 6: v["b13"]})
        anti(1, 4, {5: -v["a25"], 6: v["b14"]})
        anti(2, 3, {5: v["a25"], 6: v["b23"]})
        anti(1, 5, {6: v["b15"]})
        anti(2, 4, {6: v["b24"]})
    else:
        top = 7
        for i in range(1, 7):
            ent.append((i, 0, i + 1, one))
        for i in range(2, 7):
            ent.append((0, i, i + 1, -one))
        ent += [(0, 0, top, v["b00"]), (0, 1, 2, -one), (0, 1, top, v["b01"]), (1, 1, top, v["b11"])]
        anti(1, 2, {4: v["a14"], 5: v["a15"], 6: v["a16"], 7: v["b12"]})
        anti(1, 3, {5: v["a14"], 6: v["a15"], 7: v["b13"]})
        anti(1, 4, {6: v["a14"] - v["a26"], 7: v["b14"]})
        anti(1, 5, {7: v["b15"]})
        anti(2, 3, {6: v["a26"], 7: v["b23"]})
        anti(2, 4, {(7 if variant == "corrected" else 6): v["b24"]})
        # [e_i, e_{7-i}] = (-1)^i b34 e7 for i = 1..6, i.e. three antisymmetric pairs
        for i in range(1, 4):
            anti(i, 7 - i, {7: v["b34"] if i % 2 == 0 else -v["b34"]})
    return Algebra(top + 1, ent, zero)


def derive_constraints(family: str, variant: str = "corrected") -> list[MultiPoly]:
    """Generating set of the Leibniz conditions on the raw symbols, monic and deduplicated."""
    A = raw_table(family, variant)
    seen = set()
    out = []
    for _, _, _, defect in leibniz_violations(A):
        for p in defect.coords:
            if not p:
                continue
            m = p.monic()
            if m not in seen:
                seen.add(m)
                out.append(m)
    out.sort(key=lambda p: (p.total_degree(), str(p)))
    return out


def _monomials(nvars: int, degree: int) -> list[tuple]:
    mons = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for k in combo:
                e[k] += 1
            mons.append(tuple(e))
    return mons


def _truncated_ideal(gens: list[MultiPoly], variables: tuple, degree: int = 2) -> list[MultiPoly]:
    out = []
    n = len(variables)
    for g in gens:
        g = g.extend(variables)
        room = degree - g.total_degree()
        for e in _monomials(n, max(room, 0)) if room >= 0 else []:
            out.append(g * MultiPoly(variables, {e: ONE}))
    return out


class _Span:
    """Span of polynomials as coefficient vectors, for repeated membership tests."""

    def __init__(self, polys: list[MultiPoly], variables: tuple):
        self.variables = variables
        self.ech = SparseEchelon()
        for p in polys:
            self.ech.add(self._vec(p))

    def _vec(self, p: MultiPoly) -> dict:
        return {_grlex_key(e): c for e, c in p.extend(self.variables).terms.items()}

    def contains(self, p: MultiPoly) -> bool:
        return self.ech.contains(self._vec(p))


def _grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


@dataclass
class ConstraintReport:
    family: str
    variant: str
    constraints: list
    items: list = field(default_factory=list)  # (label, relation, status)
    extra: list = field(default_factory=list)  # derived relations outside the lemma ideal
    independent_linear: int = 0

    lemma_linear: int = 0
    linear_span_equal: bool = False

    @property
    def matched(self) -> int:
        return sum(1 for it in self.items if it[2] in ("matched", "matched-radical"))

    @property
    def missing(self) -> int:
        return sum(1 for it in self.items if it[2] == "missing")

    def same_variety(self) -> bool:
        return not self.extra and not self.missing

    def to_json_obj(self) -> dict:
        return {
            "family": self.family,
            "variant": self.variant,
            "constraints": [str(p) for p in self.constraints],
            "lemma": [{"item": lab, "relation": str(rel), "status": st} for lab, rel, st in self.items],
            "extra": [str(p) for p in self.extra],
            "independent_linear": self.independent_linear,
            "lemma_linear": self.lemma_linear,
            "linear_span_equal": self.linear_span_equal,
            "matched": self.matched,
            "missing": self.missing,
        }


def compare_with_lemma(family: str, variant: str = "corrected") -> ConstraintReport:
    fam = normalize_family(family)
    names = RAW_VARIABLES[fam]
    derived = derive_constraints(fam, variant)
    lemma = [(lab, parse_poly(text, names)) for lab, text in LEMMA_ITEMS[fam]]
    derived_span = _Span(_truncated_ideal(derived, names), names)
    lemma_span = _Span(_truncated_ideal([p for _, p in lemma], names), names)
    rep = ConstraintReport(fam, variant, derived)
    for lab, p in lemma:
        if derived_span.contains(p):
            status = "matched"
        elif p.total_degree() == 1 and derived_span.contains(p * p):
            # p^2 lies in the ideal, so p vanishes wherever the constraints hold
            status = "matched-radical"
        else:
            status = "missing"
        rep.items.append((lab, p, status))
    rep.extra = [p for p in derived if not lemma_span.contains(p)]
    mons = _monomials(len(names), 1)
    linear = [p.extend(names).coefficient_vector(mons) for p in derived if p.total_degree() == 1]
    lemma_lin = [p.extend(names).coefficient_vector(mons) for _, p in lemma if p.total_degree() == 1]
    rep.independent_linear = rank(linear) if linear else 0
    rep.lemma_linear = rank(lemma_lin) if lemma_lin else 0
    both = rank(linear + lemma_lin) if linear or lemma_lin else 0
    rep.linear_span_equal = both == rep.independent_linear == rep.lemma_linear
    return rep
