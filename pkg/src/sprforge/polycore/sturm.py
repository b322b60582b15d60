"""Sturm-sequence root counting and positivity certificates.

Chains are first built in floating point from normalized remainders while
tracking a running bound on the accumulated relative error.  Whenever a sign
that the verdict depends on is not clearly resolved by that bound, the whole
computation is redone on an exact integer pseudo-remainder chain.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ..config import DEFAULT_TOL, Tolerances
from . import _exact
from .poly import Poly, ZeroPolynomialError, as_poly, cauchy_root_bound

_EPS = np.finfo(float).eps
# float chains whose estimated error exceeds this are not worth reading
_CHAIN_GARBAGE = 1e-4


@dataclass
class PositivityProof:
    """Record of a positivity decision for a real polynomial.

    ``sign_counts`` holds the Sturm sign variations at the two domain
    endpoints, so ``sign_counts[0] - sign_counts[1]`` is the number of
    distinct roots strictly inside the domain (after factoring out any root
    at a closed endpoint, see ``zero_multiplicity``).
    """

    target: Poly
    domain: str
    sturm_chain: list[Poly]
    sign_counts: tuple[int, int]
    verdict: bool
    witness: Optional[float] = None
    witness_value: Optional[float] = None
    precision: str = "float"
    lower: float = 0.0
    upper: float = float("inf")
    zero_multiplicity: int = 0

    @property
    def root_count(self) -> int:
        return self.sign_counts[0] - self.sign_counts[1]

    def to_dict(self) -> dict:
        return {
            "target": self.target.tolist(),
            "domain": self.domain,
            "lower": self.lower,
            "upper": None if np.isinf(self.upper) else self.upper,
            "sturm_chain": [p.tolist() for p in self.sturm_chain],
            "sign_counts": list(self.sign_counts),
            "verdict": self.verdict,
            "witness": self.witness,
            "witness_value": self.witness_value,
            "precision": self.precision,
            "zero_multiplicity": self.zero_multiplicity,
        }


class _Ambiguous(Exception):
    pass


# ---------------------------------------------------------------------------
# float chain
# ---------------------------------------------------------------------------
def _normalize(c: np.ndarray) -> np.ndarray:
    m = np.max(np.abs(c))
    return c / m


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    return c[nz[0]:] if nz.size else c[:0]


@dataclass
class _FloatChain:
    polys: list[np.ndarray]
    errs: list[float] = field(default_factory=list)


def _float_chain(coeffs: np.ndarray) -> _FloatChain:
    p = _normalize(np.asarray(coeffs, dtype=float))
    d = p.size - 1
    chain = [p]
    errs = [_EPS]
    if d == 0:
        return _FloatChain(chain, errs)
    dp = _normalize(p[:-1] * np.arange(d, 0, -1))
    chain.append(dp)
    errs.append(4 * d * _EPS)
    while chain[-1].size > 1:
        a, b = chain[-2], chain[-1]
        q, r = np.polydiv(a, b)
        r = np.atleast_1d(r)[-(b.size - 1):]
        scale = 1.0 + np.max(np.abs(q)) * 1.0
        r = _trim(r)
        nr = np.max(np.abs(r)) if r.size else 0.0
        if nr <= 64 * _EPS * scale:
            # remainder indistinguishable from zero: multiple roots or noise
            raise _Ambiguous("vanishing remainder")
        amp = scale / nr
        err = (max(errs[-1], errs[-2]) * (a.size + b.size)) * amp + _EPS
        if err > _CHAIN_GARBAGE:
            raise _Ambiguous("error growth")
        chain.append(-r / nr)
        errs.append(err)
    return _FloatChain(chain, errs)


def _decided_sign(v: float, err: float, scale: float, tol: Tolerances) -> int:
    bound = max(tol.sign, 10.0 * err) * scale
    if abs(v) <= bound:
        raise _Ambiguous("sign too close to zero")
    return 1 if v > 0 else -1


def _float_variations_at(fc: _FloatChain, x: float, tol: Tolerances) -> int:
    signs = []
    for c, err in zip(fc.polys, fc.errs):
        try:
            if np.isinf(x):
                signs.append(_decided_sign(c[0], err, 1.0, tol))
            else:
                v = np.polyval(c, x)
                scale = np.polyval(np.abs(c), abs(x))
                signs.append(_decided_sign(v, err, scale, tol))
        except _Ambiguous:
            signs.append(None)
    last = len(signs) - 1
    for k, s in enumerate(signs):
        if s is not None:
            continue
        # an undecided inner member is harmless when its neighbours have
        # opposite signs: either sign gives the same variation count
        if k == 0 or k == last or signs[k - 1] is None or signs[k + 1] is None:
            raise _Ambiguous("undecided sign in Sturm chain")
        if signs[k - 1] == signs[k + 1]:
            raise _Ambiguous("undecided sign between equal neighbours")
        signs[k] = 0
    return _exact.variations(signs)


# ---------------------------------------------------------------------------
# exact helpers
# ---------------------------------------------------------------------------
def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(float(x))


def _chain_to_polys(chain: list[list[int]]) -> list[Poly]:
    out = []
    for p in chain:
        m = max(abs(c) for c in p)
        out.append(Poly([float(Fraction(c, m)) for c in p], strip=0.0))
    return out


def _variations(chain, x) -> int:
    if x is None:
        return _exact.chain_variations(chain, "inf")
    return _exact.chain_variations(chain, x)


def _pick_split(p: list[int], a: Fraction, b: Fraction) -> Fraction:
    m = (a + b) / 2
    k = 3
    while _exact.sign_at(p, m) == 0:
        m = a + (b - a) * Fraction(2 ** (k - 1) + 1, 2 ** k)
        k += 1
    return m


def _root_bound_exact(p: list[int]) -> Fraction:
    lead = abs(p[0])
    m = max((Fraction(abs(c), lead) for c in p[1:]), default=Fraction(0))
    return 2 * (1 + m)


def isolate_exact(p: list[int], lo: Fraction, hi: Optional[Fraction],
                  rel_width: float = 2.0 ** -52, first_only: bool = False) -> list[Fraction]:
    """Approximate every distinct root of ``p`` strictly inside ``(lo, hi)``.

    ``hi=None`` means ``+inf``.  Roots sitting exactly on ``lo`` or ``hi`` are
    not reported.  Each root is returned as the midpoint of an isolating
    interval refined to relative width ``rel_width``.
    """
    p = _exact.strip(list(p))
    if len(p) <= 1:
        return []
    chain = _exact.sturm_chain(p)
    if hi is None:
        hi = max(_root_bound_exact(p), lo + 1)
    # nudge endpoints that are roots so Sturm counts are valid
    width = hi - lo
    if _exact.sign_at(p, lo) == 0:
        lo = lo + width / 2 ** 60
        while _exact.sign_at(p, lo) == 0:
            lo = lo + width / 2 ** 60
    if _exact.sign_at(p, hi) == 0:
        hi = hi - width / 2 ** 60
        while _exact.sign_at(p, hi) == 0:
            hi = hi - width / 2 ** 60
    roots: list[Fraction] = []
    stack = [(lo, hi, _variations(chain, lo), _variations(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n <= 0:
            continue
        if n == 1:
            roots.append(_refine_single(p, chain, a, b, va, vb, rel_width))
            if first_only:
                break
            continue
        m = _pick_split(p, a, b)
        vm = _variations(chain, m)
        # push upper first so the lower half is processed first
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    roots.sort()
    return roots


def _refine_single(p, chain, a, b, va, vb, rel_width) -> Fraction:
    sa = _exact.sign_at(p, a)
    sb = _exact.sign_at(p, b)
    while True:
        scale = max(abs(a), abs(b), Fraction(1, 2 ** 60))
        if b - a <= scale * Fraction(rel_width):
            return (a + b) / 2
        m = _pick_split(p, a, b)
        if sa * sb < 0:
            sm = _exact.sign_at(p, m)
            if sm == sa:
                a = m
            else:
                b = m
        else:
            vm = _variations(chain, m)
            if va - vm >= 1:
                b, vb = m, vm
            else:
                a, va = m, vm


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------
def _report_chain(chain: list[Poly], g: Poly) -> list[Poly]:
    # members are positive multiples of the textbook chain; report the
    # first two unscaled so the proof reads target, derivative, remainders
    out = list(chain)
    out[0] = g
    if len(out) > 1:
        out[1] = g.derive()
    return out


def sturm_chain(p) -> list[Poly]:
    """Sturm chain of ``p``: ``p``, ``p'``, then normalized negated remainders."""
    p = as_poly(p).require_nonzero()
    try:
        chain = [Poly(c, strip=0.0) for c in _float_chain(p.coeffs).polys]
    except _Ambiguous:
        chain = _chain_to_polys(_exact.sturm_chain(_exact.to_integer(p.coeffs)))
    return _report_chain(chain, p)


def count_real_roots(p, lo: float = -np.inf, hi: float = np.inf) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(lo, hi)``."""
    return len(real_roots(p, lo, hi))


def real_roots(p, lo: float = -np.inf, hi: float = np.inf,
               rel_width: float = 2.0 ** -52) -> list[float]:
    """Distinct real roots of ``p`` inside ``(lo, hi)``, isolated exactly."""
    p = as_poly(p).require_nonzero()
    ints = _exact.to_integer(p.coeffs)
    if len(ints) <= 1:
        return []
    bound = _root_bound_exact(ints)
    a = -bound if np.isinf(lo) else _frac(lo)
    b = bound if np.isinf(hi) else _frac(hi)
    if a >= b:
        return []
    return [float(r) for r in isolate_exact(ints, a, b, rel_width)]


def _strip_zero_roots(ints: list[int]) -> tuple[list[int], int]:
    m = 0
    while len(ints) > 1 and ints[-1] == 0:
        ints = ints[:-1]
        m += 1
    return ints, m


def _witness_value(p: Poly, w: float) -> float:
    return float(p(w))


def positive_on_halfline(g, strict_at_zero: bool = True,
                         tol: Tolerances = DEFAULT_TOL) -> PositivityProof:
    """Decide whether ``g(t) > 0`` for every ``t`` in ``[0, inf)``.

    With ``strict_at_zero=False`` the domain is the open half-line
    ``(0, inf)`` and ``g(0) = 0`` is allowed.  A negative verdict carries a
    witness ``t`` where ``g`` is (numerically) nonpositive.

    Examples
    --------
    >>> positive_on_halfline(Poly([1, 0, 1])).verdict
    True
    >>> proof = positive_on_halfline(Poly([1, -2, 1]))
    >>> proof.verdict, round(proof.witness, 6)
    (False, 1.0)
    """
    g = as_poly(g)
    if g.is_zero:
        raise ZeroPolynomialError("positivity of the zero polynomial is undefined")
    domain = "[0,inf)" if strict_at_zero else "(0,inf)"
    if g.degree == 0:
        ok = g.lc > 0
        return PositivityProof(g, domain, [g], (0, 0), ok,
                               witness=None if ok else 0.0,
                               witness_value=None if ok else g.lc, precision="float")
    try:
        return _halfline_float(g, strict_at_zero, domain, tol)
    except _Ambiguous:
        return _halfline_exact(g, strict_at_zero, domain, tol)


def _halfline_float(g: Poly, strict: bool, domain: str, tol: Tolerances) -> PositivityProof:
    fc = _float_chain(g.coeffs)
    scale = g.norm()
    g0 = g.coeffs[-1]
    s0 = _decided_sign(g0, _EPS, scale, tol)
    v0 = _float_variations_at(fc, 0.0, tol)
    vinf = _float_variations_at(fc, np.inf, tol)
    chain = _report_chain([Poly(c, strip=0.0) for c in fc.polys], g)
    count = v0 - vinf
    if s0 > 0 and count == 0:
        return PositivityProof(g, domain, chain, (v0, vinf), True, precision="float")
    # negative verdicts need an exact witness anyway
    raise _Ambiguous("nonpositive somewhere")


def _halfline_exact(g: Poly, strict: bool, domain: str, tol: Tolerances) -> PositivityProof:
    ints = _exact.to_integer(g.coeffs)
    h, m = _strip_zero_roots(ints)
    chain = _exact.sturm_chain(h)
    v0 = _exact.chain_variations(chain, Fraction(0))
    vinf = _exact.chain_variations(chain, "inf")
    polys = _chain_to_polys(chain)
    if m == 0:
        polys = _report_chain(polys, g)
    h0 = (h[-1] > 0) - (h[-1] < 0)
    # for m > 0 the sign of g just right of zero is the sign of h(0)
    counts = (v0, vinf)
    if m > 0 and strict:
        return PositivityProof(g, domain, polys, counts, False, witness=0.0,
                               witness_value=float(g.coeffs[-1]), precision="exact",
                               zero_multiplicity=m)
    if h0 < 0:
        w = _tiny_positive(g)
        return PositivityProof(g, domain, polys, counts, False, witness=w,
                               witness_value=_witness_value(g, w), precision="exact",
                               zero_multiplicity=m)
    if v0 - vinf == 0:
        return PositivityProof(g, domain, polys, counts, True, precision="exact",
                               zero_multiplicity=m)
    w = float(isolate_exact(h, Fraction(0), None, first_only=True)[0])
    return PositivityProof(g, domain, polys, counts, False, witness=w,
                           witness_value=_witness_value(g, w), precision="exact",
                           zero_multiplicity=m)


def _tiny_positive(g: Poly) -> float:
    roots = real_roots(g, 0.0, np.inf)
    return 0.5 * roots[0] if roots else 1.0


def positive_on_interval(p, lo: float, hi: float,
                         tol: Tolerances = DEFAULT_TOL) -> PositivityProof:
    """Decide ``p(t) > 0`` on the closed interval ``[lo, hi]``.

    ``p`` may be a :class:`Poly` or a sequence of exact ``Fraction``
    coefficients (descending); the decision is always made exactly.
    """
    if isinstance(p, Poly) or not all(isinstance(c, Fraction) for c in p):
        p = as_poly(p)
        if p.is_zero:
            raise ZeroPolynomialError("positivity of the zero polynomial is undefined")
        fracs = p.to_fractions()
        shown = p
    else:
        fracs = list(p)
        if not any(fracs):
            raise ZeroPolynomialError("positivity of the zero polynomial is undefined")
        shown = Poly([float(c) for c in fracs], strip=0.0)
    domain = f"[{lo},{hi}]"
    flo, fhi = _frac(lo), _frac(hi)
    ints = _exact.to_integer(fracs)
    if len(ints) == 1:
        ok = ints[0] > 0
        return PositivityProof(shown, domain, [shown], (0, 0), ok, witness=None if ok else lo,
                               witness_value=None if ok else float(fracs[-1]),
                               precision="exact", lower=lo, upper=hi)
    chain = _exact.sturm_chain(ints)
    slo, shi = _exact.sign_at(ints, flo), _exact.sign_at(ints, fhi)
    polys = _chain_to_polys(chain)
    exact_val = lambda t: float(_exact.value(fracs, _frac(t)))
    if slo <= 0 or shi <= 0:
        w = lo if slo <= 0 else hi
        return PositivityProof(shown, domain, polys, (0, 0), False, witness=float(w),
                               witness_value=exact_val(w), precision="exact",
                               lower=lo, upper=hi)
    va = _exact.chain_variations(chain, flo)
    vb = _exact.chain_variations(chain, fhi)
    if va - vb == 0:
        return PositivityProof(shown, domain, polys, (va, vb), True, precision="exact",
                               lower=lo, upper=hi)
    w = float(isolate_exact(ints, flo, fhi, first_only=True)[0])
    return PositivityProof(shown, domain, polys, (va, vb), False, witness=w,
                           witness_value=exact_val(w), precision="exact", lower=lo, upper=hi)


def interval_extrema(p, lo: float, hi: float,
                     rel_width: float = 2.0 ** -30) -> tuple[float, float, float, float]:
    """Return ``(min, argmin, max, argmax)`` of ``p`` over ``[lo, hi]``.

    Candidates are the endpoints and the exactly isolated roots of ``p'``.
    Critical points are refined to ``rel_width``; since the derivative
    vanishes there, the value error is quadratic in that width.
    """
    p = as_poly(p).require_nonzero()
    cand = [lo, hi]
    dp = p.derive()
    if not dp.is_zero:
        cand += real_roots(dp, lo, hi, rel_width)
    vals = np.array([float(p(t)) for t in cand])
    i, j = int(np.argmin(vals)), int(np.argmax(vals))
    return float(vals[i]), float(cand[i]), float(vals[j]), float(cand[j])


def rational_extrema(num, den, lo: float, hi: float,
                     rel_width: float = 2.0 ** -30) -> tuple[float, float, float, float]:
    """Extrema of ``num/den`` over ``[lo, hi]``; ``den`` must not vanish there."""
    num, den = as_poly(num), as_poly(den).require_nonzero()
    cand = [lo, hi]
    if not num.is_zero:
        crit = num.derive() * den - num * den.derive()
        if not crit.is_zero and crit.degree > 0:
            cand += real_roots(crit, lo, hi, rel_width)
    vals = np.array([float(num(t)) / float(den(t)) for t in cand])
    i, j = int(np.argmin(vals)), int(np.argmax(vals))
    return float(vals[i]), float(cand[i]), float(vals[j]), float(cand[j])


__all__ = [
    "PositivityProof", "sturm_chain", "count_real_roots", "real_roots",
    "positive_on_halfline", "positive_on_interval", "interval_extrema",
    "rational_extrema", "cauchy_root_bound",
]
