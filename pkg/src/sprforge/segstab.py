"""Hurwitz stability of the whole segment ``lambda*b + (1-lambda)*a``.

The primary test is boundary-crossing elimination.  Since both endpoints
are monic of the same degree the degree never drops along the segment, so
roots move continuously and the segment leaves the Hurwitz set only through
the imaginary axis.  Writing ``p(s) = E(s**2) + s*O(s**2)``, a root at
``s = jw`` (``w != 0``) of the member at ``lambda`` needs

    E_a(u) + lambda*dE(u) = 0   and   O_a(u) + lambda*dO(u) = 0,   u = -w**2,

both affine in ``lambda``.  Eliminating ``lambda`` leaves the single
polynomial ``R(u) = E_a(u)*dO(u) - O_a(u)*dE(u)`` whose negative roots are
the only candidate crossings.  ``w = 0`` is the constant-term check.

:func:`lambda_routh_positivity` is an independent second route through the
leading Hurwitz minors as exact polynomials in ``lambda``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import PreconditionError
from .polycore import Poly, as_poly, positive_on_interval, routh_hurwitz
from .polycore import _exact
from .polycore.sturm import isolate_exact

MAX_MINOR_DEGREE = 12


@dataclass(frozen=True)
class SegmentFamily:
    """Ordered pair of monic, equal-degree polynomials ``(a, b)``."""

    a: Poly
    b: Poly

    def __post_init__(self):
        a, b = as_poly(self.a), as_poly(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a.is_zero or b.is_zero:
            raise PreconditionError("segment endpoints must be nonzero")
        if a.degree != b.degree:
            raise PreconditionError(f"degree mismatch: {a.degree} vs {b.degree}")
        if a.degree < 1:
            raise PreconditionError("segment endpoints need degree >= 1")
        if a.lc != 1.0 or b.lc != 1.0:
            raise PreconditionError("segment endpoints must be monic")

    @classmethod
    def normalized(cls, a, b) -> "SegmentFamily":
        """Build a family after scaling each endpoint to be monic."""
        return cls(as_poly(a).monic(), as_poly(b).monic())

    @property
    def n(self) -> int:
        return self.a.degree

    @property
    def degenerate(self) -> bool:
        return self.a == self.b

    def member(self, lam: float) -> Poly:
        return Poly(self.a.coeffs + lam * (self.b.coeffs - self.a.coeffs), strip=0.0)

    def to_dict(self) -> dict:
        return {"a": self.a.tolist(), "b": self.b.tolist()}


@dataclass
class SegmentVerdict:
    stable: bool
    witness_lambda: Optional[float] = None
    witness_root: Optional[complex] = None
    method_trace: list[str] = field(default_factory=list)
    crossings: list[tuple[float, float]] = field(default_factory=list)
    residual: Optional[float] = None

    def __bool__(self) -> bool:
        return self.stable

    def to_dict(self) -> dict:
        root = self.witness_root
        return {
            "stable": self.stable,
            "witness_lambda": self.witness_lambda,
            "witness_root": None if root is None else [root.real, root.imag],
            "method_trace": list(self.method_trace),
            "crossings": [list(c) for c in self.crossings],
            "residual": self.residual,
        }


def _rhp_root(p: Poly) -> complex:
    roots = np.roots(p.coeffs)
    return complex(roots[np.argmax(roots.real)])


def _even_odd_exact(p: Poly) -> tuple[list[Fraction], list[Fraction]]:
    asc = [Fraction(float(c)) for c in p.coeffs[::-1]]
    even = asc[0::2][::-1]
    odd = asc[1::2][::-1]
    return even, odd


def _sub(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    m = max(len(p), len(q))
    p = [Fraction(0)] * (m - len(p)) + p
    q = [Fraction(0)] * (m - len(q)) + q
    return [x - y for x, y in zip(p, q)]


def _mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def _horner(p: list[Fraction], u: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * u + c
    return acc


def _abs_scale(p: list[Fraction], u: Fraction) -> Fraction:
    acc = Fraction(0)
    au = abs(u)
    for c in p:
        acc = acc * au + abs(c)
    return acc


def segment_hurwitz(fam: SegmentFamily, tol: Tolerances = DEFAULT_TOL) -> SegmentVerdict:
    """Decide whether every member of the segment is Hurwitz stable.

    Returns a :class:`SegmentVerdict`; an unstable verdict carries a witness
    ``lambda`` in ``[0, 1]`` and a root of that member with nonnegative real
    part (on the axis for interior crossings).
    """
    trace: list[str] = []
    ra = routh_hurwitz(fam.a)
    if not ra.hurwitz:
        trace.append("endpoint a fails Routh")
        return SegmentVerdict(False, 0.0, _rhp_root(fam.a), trace)
    rb = routh_hurwitz(fam.b)
    if not rb.hurwitz:
        trace.append("endpoint b fails Routh")
        return SegmentVerdict(False, 1.0, _rhp_root(fam.b), trace)
    trace.append("endpoints Hurwitz (Routh)")
    if fam.degenerate:
        trace.append("a == b: constant segment")
        return SegmentVerdict(True, method_trace=trace)

    # root at the origin: constant term a_n + lambda*(b_n - a_n) vanishing
    an, bn = fam.a.coeffs[-1], fam.b.coeffs[-1]
    if an != bn:
        lam0 = an / (an - bn)
        if 0.0 <= lam0 <= 1.0:
            trace.append("constant term vanishes on the segment")
            return SegmentVerdict(False, float(lam0), 0j, trace, [(float(lam0), 0.0)], 0.0)
    trace.append("constant term keeps its sign")

    Ea, Oa = _even_odd_exact(fam.a)
    Eb, Ob = _even_odd_exact(fam.b)
    dE, dO = _sub(Eb, Ea), _sub(Ob, Oa)
    R = _exact.strip(_sub(_mul(Ea, dO), _mul(Oa, dE)))
    crossings: list[tuple[float, float]] = []
    if R and any(R):
        ints = _exact.to_integer(R)
        # substitute u = -v so the negative half-line becomes (0, inf)
        d = len(ints) - 1
        mirrored = [c * (-1) ** (d - i) for i, c in enumerate(ints)]
        cands = isolate_exact(mirrored, Fraction(0), None) if len(mirrored) > 1 else []
        trace.append(f"elimination polynomial degree {d}, {len(cands)} candidate(s) on u<0")
        for v in cands:
            lam = _backsolve(Ea, Oa, dE, dO, -v, tol)
            if lam is None:
                continue
            crossings.append((lam, float(np.sqrt(float(v)))))
    else:
        trace.append("elimination polynomial vanishes identically")

    if not crossings:
        trace.append("no imaginary-axis crossing for lambda in [0,1]")
        return SegmentVerdict(True, method_trace=trace)
    crossings.sort()
    lam, w = crossings[0]
    member = fam.member(lam)
    root = complex(0.0, w)
    scale = float(np.sum(np.abs(member.coeffs) * w ** np.arange(member.degree, -1, -1)))
    residual = abs(complex(member.eval_at_jomega(w))) / scale
    trace.append(f"axis crossing at lambda={lam:.12g}, omega={w:.12g}")
    return SegmentVerdict(False, lam, root, trace, crossings, residual)


def _backsolve(Ea, Oa, dE, dO, u: Fraction, tol: Tolerances) -> Optional[float]:
    """Recover lambda from the even and odd equations at a candidate ``u``."""
    lams = []
    for base, delta in ((Ea, dE), (Oa, dO)):
        den = _horner(delta, u)
        scale = _abs_scale(delta, u) + _abs_scale(base, u)
        if scale == 0 or abs(den) <= Fraction(1, 10 ** 12) * scale:
            continue
        lams.append(float(-_horner(base, u) / den))
    if not lams:
        return None
    slack = tol.lam
    if len(lams) == 2 and abs(lams[0] - lams[1]) > slack * max(1.0, abs(lams[0])):
        return None
    lam = float(np.mean(lams))
    if -slack <= lam <= 1.0 + slack:
        return min(max(lam, 0.0), 1.0)
    return None


# ---------------------------------------------------------------------------
# second route: Hurwitz minors as polynomials in lambda
# ---------------------------------------------------------------------------
def _hurwitz_matrix(c: list[int]) -> list[list[int]]:
    n = len(c) - 1
    H = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k = 2 * j - i + 1
            if 0 <= k <= n:
                H[i][j] = c[k]
    return H


def _det_fraction(M: list[list[Fraction]]) -> Fraction:
    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return det


def _leading_minors(H: list[list[int]]) -> list[int]:
    """All leading principal minors via fraction-free Bareiss elimination."""
    n = len(H)
    M = [row[:] for row in H]
    minors = [M[0][0]]
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            # pivot breakdown: finish the remaining minors directly
            for m in range(k + 2, n + 1):
                sub = [[Fraction(H[i][j]) for j in range(m)] for i in range(m)]
                minors.append(int(_det_fraction(sub)))
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
        minors.append(M[k + 1][k + 1])
    return minors


def _newton_to_monomial(values: list[int]) -> list[Fraction]:
    """Interpolate values at 0, 1, ..., m; return descending coefficients."""
    m = len(values) - 1
    diffs = [Fraction(v) for v in values]
    coef = [diffs[0]]
    for k in range(1, m + 1):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        coef.append(diffs[0])
    # sum_k coef[k]/k! * prod_{i<k} (x - i)
    poly = [Fraction(0)]
    basis = [Fraction(1)]
    fact = 1
    for k in range(m + 1):
        if k > 0:
            fact *= k
            basis = _mul(basis, [Fraction(1), Fraction(-(k - 1))])
        term = [c * coef[k] / fact for c in basis]
        poly = _add(poly, term)
    return _exact.strip(poly) or [Fraction(0)]


def _add(p, q):
    m = max(len(p), len(q))
    p = [Fraction(0)] * (m - len(p)) + list(p)
    q = [Fraction(0)] * (m - len(q)) + list(q)
    return [x + y for x, y in zip(p, q)]


@dataclass
class MinorCheck:
    stable: bool
    failing_minor: Optional[int] = None
    minors: list[list[Fraction]] = field(default_factory=list)
    proofs: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.stable


def hurwitz_minor_polys(fam: SegmentFamily) -> list[list[Fraction]]:
    """Leading Hurwitz minors of the segment member as exact polynomials in lambda.

    Minor ``k`` (1-based) has degree at most ``k``; coefficients are exact
    rationals for a positive power-of-two scaling of the family.
    """
    n = fam.n
    if n > MAX_MINOR_DEGREE:
        raise PreconditionError(f"minor method disabled above degree {MAX_MINOR_DEGREE}")
    fa = [Fraction(float(c)) for c in fam.a.coeffs]
    fb = [Fraction(float(c)) for c in fam.b.coeffs]
    den = 1
    for c in fa + fb:
        den = den * c.denominator // gcd(den, c.denominator)
    A = [int(c * den) for c in fa]
    D = [int((y - x) * den) for x, y in zip(fa, fb)]
    samples = []
    for lam in range(n + 1):
        c = [x + lam * d for x, d in zip(A, D)]
        samples.append(_leading_minors(_hurwitz_matrix(c)))
    return [_newton_to_monomial([samples[lam][k] for lam in range(n + 1)]) for k in range(n)]


def lambda_routh_positivity(fam: SegmentFamily, tol: Tolerances = DEFAULT_TOL) -> MinorCheck:
    """Certify every leading Hurwitz minor positive for all ``lambda`` in [0, 1].

    Examples
    --------
    >>> fam = SegmentFamily(Poly([1, 3, 3, 1]), Poly([1, 6, 12, 8]))
    >>> lambda_routh_positivity(fam).stable
    True
    """
    minors = hurwitz_minor_polys(fam)
    proofs = []
    for k, m in enumerate(minors, start=1):
        if not any(m):
            return MinorCheck(False, k, minors, proofs)
        proof = positive_on_interval(m, 0.0, 1.0, tol)
        proofs.append(proof)
        if not proof.verdict:
            return MinorCheck(False, k, minors, proofs)
    return MinorCheck(True, None, minors, proofs)
