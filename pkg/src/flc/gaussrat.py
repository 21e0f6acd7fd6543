"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts.

Both parts are stored as ``gmpy2.mpq`` values, which are always kept in
lowest terms with a positive denominator.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussRat", "DivisionByZero", "ZERO", "ONE", "I", "as_gauss"]

_MPQ = type(mpq(0))
_Q0 = mpq(0)
_Q1 = mpq(1)


class DivisionByZero(ZeroDivisionError):
    """Raised when dividing by the zero Gaussian rational."""


def _q(x) -> "mpq":
    if type(x) is _MPQ:
        return x
    if isinstance(x, (int, Rational)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class GaussRat:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _raw(cls, re, im) -> "GaussRat":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- coercion ---------------------------------------------------------
    @staticmethod
    def coerce(x) -> "GaussRat":
        return as_gauss(x)

    @classmethod
    def parse(cls, text: str) -> "GaussRat":
        return parse_gauss(text)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if type(other) is GaussRat:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "GaussRat":
        return GaussRat._raw(-self.re, -self.im)

    def __pos__(self) -> "GaussRat":
        return self

    def __add__(self, other) -> "GaussRat":
        if type(other) is not GaussRat:
            try:
                other = as_gauss(other)
            except TypeError:
                return NotImplemented
        return GaussRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussRat":
        if type(other) is not GaussRat:
            try:
                other = as_gauss(other)
            except TypeError:
                return NotImplemented
        return GaussRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussRat":
        try:
            other = as_gauss(other)
        except TypeError:
            return NotImplemented
        return GaussRat._raw(other.re - self.re, other.im - self.im)

    def __mul__(self, other) -> "GaussRat":
        if type(other) is not GaussRat:
            try:
                other = as_gauss(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussRat._raw(a * c, _Q0)
            return GaussRat._raw(a * c, a * d)
        if not d:
            return GaussRat._raw(a * c, b * c)
        return GaussRat._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise DivisionByZero("division by zero Gaussian rational")
            return GaussRat._raw(_Q1 / a, _Q0)
        n = a * a + b * b
        return GaussRat._raw(a / n, -b / n)

    def __truediv__(self, other) -> "GaussRat":
        if type(other) is not GaussRat:
            try:
                other = as_gauss(other)
            except TypeError:
                return NotImplemented
        if not other.im:
            if not other.re:
                raise DivisionByZero("division by zero Gaussian rational")
            return GaussRat._raw(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "GaussRat":
        try:
            other = as_gauss(other)
        except TypeError:
            return NotImplemented
        return other / self

    def __pow__(self, k: int) -> "GaussRat":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "GaussRat":
        return GaussRat._raw(self.re, -self.im)

    def norm(self) -> "mpq":
        """Field norm re^2 + im^2."""
        return self.re * self.re + self.im * self.im

    def denominator_lcm(self) -> int:
        a = int(self.re.denominator)
        b = int(self.im.denominator)
        from math import lcm
        return lcm(a, b)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        return format_gauss(self)

    def __repr__(self) -> str:
        return f"GaussRat('{format_gauss(self)}')"

    def to_json(self) -> str:
        return format_gauss(self)


ZERO = GaussRat._raw(_Q0, _Q0)
ONE = GaussRat._raw(_Q1, _Q0)
I = GaussRat._raw(_Q0, _Q1)


def as_gauss(x) -> GaussRat:
    if type(x) is GaussRat:
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return GaussRat._raw(mpq(x), _Q0)
    if type(x) is _MPQ or isinstance(x, Rational):
        return GaussRat._raw(mpq(x), _Q0)
    if isinstance(x, complex):
        return GaussRat(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return parse_gauss(x)
    raise TypeError(f"cannot convert {type(x).__name__} to GaussRat")


def _fmt_q(q) -> str:
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def format_gauss(z: GaussRat) -> str:
    """Canonical text: ``"1/2-3/4i"``, ``"0"``, ``"2i"``, ``"-i"``."""
    re_, im_ = z.re, z.im
    if not im_:
        return _fmt_q(re_)
    if im_ == 1:
        ims = "i"
    elif im_ == -1:
        ims = "-i"
    else:
        ims = _fmt_q(im_) + "i"
    if not re_:
        return ims
    if ims[0] != "-":
        ims = "+" + ims
    return _fmt_q(re_) + ims


_NUM = r"(?:\d+(?:/\d+)?)"
_TERM = re.compile(rf"([+-]?)({_NUM})?(i?)")


def parse_gauss(text: str) -> GaussRat:
    """Parse the ``p/q+r/si`` form. Missing parts default to zero, ``i`` alone means 1i."""
    if not isinstance(text, str):
        raise TypeError("expected a string")
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty Gaussian rational literal")
    pos = 0
    re_ = Fraction(0)
    im_ = Fraction(0)
    seen_re = seen_im = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"malformed Gaussian rational: {text!r}")
        sign, num, imag = m.groups()
        if pos > 0 and not sign:
            raise ValueError(f"malformed Gaussian rational: {text!r}")
        if num is None and not imag:
            raise ValueError(f"malformed Gaussian rational: {text!r}")
        try:
            val = Fraction(num) if num is not None else Fraction(1)
        except ZeroDivisionError as exc:
            raise DivisionByZero(f"zero denominator in {text!r}") from exc
        if sign == "-":
            val = -val
        if imag:
            if seen_im:
                raise ValueError(f"malformed Gaussian rational: {text!r}")
            im_, seen_im = val, True
        else:
            if seen_re or seen_im:
                raise ValueError(f"malformed Gaussian rational: {text!r}")
            re_, seen_re = val, True
        pos = m.end()
    return GaussRat(re_, im_)
