"""Sparse multivariate polynomials over the Gaussian rationals, plus a small
rational-expression parser used by the classification data file.

Terms are ordered graded-lexicographically over the declared variable order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .gaussrat import ONE, ZERO, GaussRat, as_gauss

__all__ = [
    "MultiPoly",
    "RatFunc",
    "MissingVariable",
    "DenominatorVanished",
    "ExprParseError",
    "parse_expr",
    "parse_poly",
]


class MissingVariable(KeyError):
    """An evaluation assignment does not cover a variable the polynomial uses."""


class DenominatorVanished(ZeroDivisionError):
    """A rational expression was evaluated at a point where its denominator is zero."""


class ExprParseError(ValueError):
    pass


def _grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        clean = {}
        if terms:
            n = len(self.variables)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match variable count")
                c = as_gauss(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    @classmethod
    def const(cls, c, variables: Iterable[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        c = as_gauss(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            variables = variables + (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {e: ONE})

    # -- variable alignment ---------------------------------------------------
    def extend(self, variables: Iterable[str]) -> "MultiPoly":
        """Re-express over ``variables`` (must contain every variable in use)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = {v: k for k, v in enumerate(variables)}
        used = self.used_variables()
        for v in used:
            if v not in idx:
                raise ValueError(f"variable {v} missing from target ordering")
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for v, k in zip(self.variables, e):
                if k:
                    ne[idx[v]] = k
            terms[tuple(ne)] = c
        return MultiPoly._raw(variables, terms)

    def _align(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.variables == other.variables:
            return self, other
        merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.extend(merged), other.extend(merged)

    def _lift(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        try:
            return MultiPoly.const(other, self.variables)
        except TypeError:
            return None

    # -- queries --------------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), ZERO)

    def used_variables(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            for v, k in zip(self.variables, e):
                if k:
                    used.add(v)
        return tuple(v for v in self.variables if v in used)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple, GaussRat]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading(self) -> tuple[tuple, GaussRat]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        _, lc = self.leading()
        inv = lc.inverse()
        return MultiPoly._raw(self.variables, {e: c * inv for e, c in self.terms.items()})

    # -- ring operations -----------------------------------------------------
    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MultiPoly._raw(a.variables, terms)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            try:
                c = as_gauss(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MultiPoly._raw(self.variables, {})
            return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})
        a, b = self._align(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw(a.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = MultiPoly.const(ONE, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other, self.variables)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        used = tuple(sorted(self.used_variables()))
        p = self.extend(used)
        return hash((used, frozenset(p.terms.items())))

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Quotient if ``divisor`` divides ``self`` exactly, else None."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        a, d = self._align(divisor)
        lead_e, lead_c = d.leading()
        inv = lead_c.inverse()
        rem = dict(a.terms)
        quot: dict = {}
        dterms = list(d.terms.items())
        while rem:
            e = max(rem, key=_grlex_key)
            c = rem[e]
            shift = tuple(x - y for x, y in zip(e, lead_e))
            if any(s < 0 for s in shift):
                return None
            q = c * inv
            quot[shift] = quot.get(shift, ZERO) + q
            for de, dc in dterms:
                te = tuple(x + y for x, y in zip(de, shift))
                v = rem.get(te, ZERO) - q * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return MultiPoly._raw(a.variables, {e: c for e, c in quot.items() if c})

    # -- evaluation ----------------------------------------------------------
    def eval(self, assignment: Mapping[str, object]) -> GaussRat:
        vals = []
        for v in self.variables:
            if v in assignment:
                vals.append(as_gauss(assignment[v]))
            else:
                vals.append(None)
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for val, k, name in zip(vals, e, self.variables):
                if k:
                    if val is None:
                        raise MissingVariable(name)
                    term = term * (val ** k if k > 1 else val)
            total = total + term
        return total

    def coefficient_vector(self, monomials: list[tuple]) -> list[GaussRat]:
        return [self.terms.get(m, ZERO) for m in monomials]

    # -- text ------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            cs = str(c)
            complex_coeff = bool(c.re) and bool(c.im)
            if not mono:
                body = f"({cs})" if complex_coeff else cs
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"({cs})*{mono}" if complex_coeff else f"{cs}*{mono}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


@dataclass(frozen=True)
class RatFunc:
    """A quotient num/den of polynomials. No cancellation is attempted."""

    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        if not self.den:
            raise ZeroDivisionError("rational function with zero denominator")
        a, b = self.num._align(self.den)
        object.__setattr__(self, "num", a)
        object.__setattr__(self, "den", b)

    @staticmethod
    def of(p: MultiPoly) -> "RatFunc":
        return RatFunc(p, MultiPoly.const(ONE, p.variables))

    def __add__(self, o: "RatFunc") -> "RatFunc":
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o: "RatFunc") -> "RatFunc":
        return self + (-o)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, o: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * o.num, self.den * o.den)

    def __truediv__(self, o: "RatFunc") -> "RatFunc":
        if not o.num:
            raise ZeroDivisionError("division by the zero expression")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, k: int) -> "RatFunc":
        return RatFunc(self.num ** k, self.den ** k)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_polynomial():
            raise ValueError("expression has a non-constant denominator")
        return self.num * self.den.constant_value().inverse()

    def eval(self, assignment: Mapping[str, object]) -> GaussRat:
        d = self.den.eval(assignment)
        if not d:
            raise DenominatorVanished(f"denominator {self.den} vanishes")
        return self.num.eval(assignment) / d

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


# "2i" and "1/2i" are single tokens: the printer writes Gaussian coefficients that way
_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)i(?![A-Za-z_0-9])|(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprParseError(f"unexpected character at {pos} in {text!r}")
        imag, num, ident, op = m.groups()
        if imag is not None:
            out.append(("inum", imag))
        elif num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, variables: tuple, macros: Mapping[str, RatFunc]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = variables
        self.macros = macros

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        t = self.peek()
        if t[0] is None or (kind and t[0] != kind) or (val and t[1] != val):
            raise ExprParseError(f"unexpected token {t[1]!r} in {self.text!r}")
        self.i += 1
        return t

    def parse(self) -> RatFunc:
        if not self.toks:
            raise ExprParseError("empty expression")
        r = self.expr()
        if self.i != len(self.toks):
            raise ExprParseError(f"trailing input in {self.text!r}")
        return r

    def expr(self) -> RatFunc:
        r = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            r = r + t if op == "+" else r - t
        return r

    def term(self) -> RatFunc:
        r = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            t = self.unary()
            if op == "*":
                r = r * t
            else:
                try:
                    r = r / t
                except ZeroDivisionError as exc:
                    raise ExprParseError(f"division by zero in {self.text!r}") from exc
        return r

    def unary(self) -> RatFunc:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = int(self.take("num")[1])
            return base ** k
        return base

    def atom(self) -> RatFunc:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return RatFunc.of(MultiPoly.const(int(val), self.variables))
        if kind == "inum":
            self.take()
            return RatFunc.of(MultiPoly.const(GaussRat(0, Fraction(val)), self.variables))
        if kind == "id":
            self.take()
            if val in self.macros:
                return self.macros[val]
            if val in self.variables:
                return RatFunc.of(MultiPoly.var(val, self.variables))
            if val == "i":
                return RatFunc.of(MultiPoly.const(GaussRat(0, 1), self.variables))
            raise ExprParseError(f"unknown identifier {val!r} in {self.text!r}")
        if (kind, val) == ("op", "("):
            self.take()
            r = self.expr()
            self.take("op", ")")
            return r
        raise ExprParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_expr(text: str, variables: Iterable[str], macros: Mapping[str, RatFunc] | None = None) -> RatFunc:
    """Parse a rational expression in the given variables.

    Supports ``+ - * / ^`` (``**`` also accepted), parentheses, integer
    literals, the imaginary unit ``i`` and named macros.
    """
    return _Parser(text, tuple(variables), macros or {}).parse()


def parse_poly(text: str, variables: Iterable[str], macros: Mapping[str, RatFunc] | None = None) -> MultiPoly:
    return parse_expr(text, variables, macros).as_poly()
