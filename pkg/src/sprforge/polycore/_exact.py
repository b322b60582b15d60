"""Integer-coefficient polynomial helpers for the exact escalation path.

Polynomials are plain lists of Python ints in descending powers.  Every
float is a dyadic rational, so a float polynomial converts to an integer one
by a positive power-of-two scaling, which preserves all sign information.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def to_integer(coeffs: Sequence) -> list[int]:
    """Scale rational (or float) coefficients to a primitive integer list."""
    fr = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    return primitive(strip(ints))


def strip(p: list[int]) -> list[int]:
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def primitive(p: list[int]) -> list[int]:
    g = 0
    for c in p:
        g = gcd(g, c)
    if g > 1:
        p = [c // g for c in p]
    return p


def derive(p: list[int]) -> list[int]:
    d = len(p) - 1
    return [c * (d - i) for i, c in enumerate(p[:-1])]


def prem(a: list[int], b: list[int]) -> tuple[list[int], int]:
    """Pseudo-remainder of ``a`` by ``b``.

    Returns ``(r, k)`` with ``lc(b)**k * a = q*b + r``; ``k`` is reported so
    callers can correct the sign when ``lc(b) < 0``.
    """
    r = list(a)
    lb = b[0]
    db = len(b) - 1
    k = 0
    while len(r) - 1 >= db and r:
        lr = r[0]
        r = [lb * rc for rc in r]
        k += 1
        for i in range(len(b)):
            r[i] -= lr * b[i]
        r = r[1:]
    return strip(r), k


def sturm_chain(p: list[int]) -> list[list[int]]:
    """Sturm sequence up to positive scaling of each member.

    Each new member is ``-prem(prev, cur)`` with the sign corrected for a
    negative ``lc(cur)**k`` factor and then made primitive.
    """
    chain = [primitive(p)]
    if len(p) <= 1:
        return chain
    chain.append(primitive(derive(p)))
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r, k = prem(a, b)
        if not r:
            break
        if b[0] < 0 and k % 2 == 1:
            r = [-c for c in r]
        chain.append(primitive([-c for c in r]))
    return chain


def sign_at(p: list[int], x: Fraction) -> int:
    """Sign of ``p(x)`` for rational ``x`` (homogeneous Horner, no division)."""
    if not p:
        return 0
    num, den = x.numerator, x.denominator
    acc = p[0]
    dpow = 1
    for c in p[1:]:
        dpow *= den
        acc = acc * num + c * dpow
    return (acc > 0) - (acc < 0)


def sign_at_inf(p: list[int], positive: bool = True) -> int:
    if not p:
        return 0
    s = (p[0] > 0) - (p[0] < 0)
    if not positive and (len(p) - 1) % 2 == 1:
        s = -s
    return s


def variations(signs: Sequence[int]) -> int:
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def chain_variations(chain: list[list[int]], x) -> int:
    if x == "inf":
        return variations([sign_at_inf(p) for p in chain])
    if x == "-inf":
        return variations([sign_at_inf(p, positive=False) for p in chain])
    return variations([sign_at(p, x) for p in chain])


def value(p: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc
