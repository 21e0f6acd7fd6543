"""Exact k-th roots inside the Gaussian rationals.

A root w of w^k = z with z in Q(i) lies in Q(i) only sometimes. When it does,
D*w is a Gaussian integer for D the common denominator of z, so a numerical
root rounded at that scale and then checked exactly finds every such w.
"""
from __future__ import annotations

from math import lcm

import mpmath

from .gaussrat import GaussRat, ZERO

__all__ = ["gauss_roots", "poly_gauss_roots", "root_sort_key"]


def root_sort_key(w: GaussRat):
    """Prefer positive reals, then larger real part, then larger imaginary part."""
    return (bool(w.im), not (w.re > 0), -w.re, -w.im)


def gauss_roots(z: GaussRat, k: int) -> list[GaussRat]:
    """All w in Q(i) with w**k == z, sorted by ``root_sort_key``."""
    if k < 1:
        raise ValueError("root index must be positive")
    if k == 1:
        return [z]
    if not z:
        return [ZERO]
    D = z.denominator_lcm()
    mag_bits = max(abs(int(z.re.numerator)), abs(int(z.im.numerator)), 1).bit_length()
    dps = 30 + (mag_bits + 2 * D.bit_length()) // 3
    found = set()
    with mpmath.workdps(dps):
        zc = mpmath.mpc(mpmath.mpf(int(z.re.numerator)) / int(z.re.denominator),
                        mpmath.mpf(int(z.im.numerator)) / int(z.im.denominator))
        r = mpmath.root(zc, k)
        zeta = mpmath.expjpi(mpmath.mpf(2) / k)
        for j in range(k):
            w = r * zeta ** j
            a = int(mpmath.nint(w.real * D))
            b = int(mpmath.nint(w.imag * D))
            cand = GaussRat(a, b) / D
            if cand ** k == z:
                found.add(cand)
    return sorted(found, key=root_sort_key)


def _eval(coeffs, x):
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divmod(a, b):
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for j, c in enumerate(b):
            a[k + j] = a[k + j] - f * c
        a.pop()
        while a and not a[-1]:
            a.pop()
    return q, a


def _squarefree(coeffs):
    """coeffs / gcd(coeffs, derivative): same roots, all simple."""
    a = coeffs
    b = [c * k for k, c in enumerate(coeffs)][1:]
    while b and not b[-1]:
        b.pop()
    if not b:
        return coeffs
    while b:
        a, b = b, _divmod(a, b)[1]
    if len(a) == 1:
        return coeffs
    return _divmod(coeffs, a)[0]


def poly_gauss_roots(coeffs: list) -> list[GaussRat]:
    """Distinct roots in Q(i) of sum coeffs[k] x^k, sorted by ``root_sort_key``.

    After clearing denominators a root p/q in lowest terms has q dividing
    the leading coefficient, so lead*root is a Gaussian integer and rounding
    the numerical root at that scale is exact whenever a rational root exists.
    """
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) < 2:
        return []
    coeffs = _squarefree(coeffs)
    found = set()
    if not coeffs[0]:
        found.add(ZERO)
        while not coeffs[0]:
            coeffs.pop(0)
        if len(coeffs) < 2:
            return sorted(found, key=root_sort_key)
    D = 1
    for c in coeffs:
        D = lcm(D, c.denominator_lcm())
    ints = [c * D for c in coeffs]
    lead = ints[-1]
    bits = max(max(abs(int(c.re)), abs(int(c.im)), 1).bit_length() for c in ints)
    dps = 30 + bits // 2 + 2 * len(ints)
    with mpmath.workdps(dps):
        mp = [mpmath.mpc(int(c.re), int(c.im)) for c in reversed(ints)]
        try:
            approx = mpmath.polyroots(mp, maxsteps=200, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence:
            return sorted(found, key=root_sort_key)
        ml = mpmath.mpc(int(lead.re), int(lead.im))
        for r in approx:
            w = r * ml
            cand = GaussRat(int(mpmath.nint(w.real)), int(mpmath.nint(w.imag))) / lead
            if not _eval(coeffs, cand):
                found.add(cand)
    return sorted(found, key=root_sort_key)
