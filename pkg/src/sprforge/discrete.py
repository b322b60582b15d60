"""Discrete-time wrapper: unit disc to left half-plane and back.

The transform convention is fixed as ``z = (1 + s) / (1 - s)``, i.e.
``s = (z - 1) / (z + 1)``.  The unit circle ``z = e^{j theta}`` maps onto the
imaginary axis with ``w = tan(theta / 2)``, the open disc onto the open left
half-plane, and ``z = -1`` onto ``s = inf``.

A pair ``c(z)/a(z)`` is called discrete SPR here when ``a`` is Schur,
``deg c <= deg a`` and ``Re[c(e^{jt})/a(e^{jt})] > 0`` for every ``t``,
including ``t = pi``.  Under the transform this is exactly continuous SPR of
the image pair, which is how it is certified.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
import numpy as np

from .config import DEFAULT_TOL, SynthesisConfig
from .errors import PreconditionError, SegmentUnstable
from .polycore import Poly, as_poly, routh_hurwitz
from .segstab import SegmentFamily
from .sprcheck import SprCertificate, is_spr
from .synthesis import SynthesisResult, synthesize


class DiscretePoly(Poly):
    """A :class:`Poly` in ``z`` whose stability domain is the open unit disc."""

    def __repr__(self) -> str:
        return f"DiscretePoly({self.tolist()!r})"


def _mobius(coeffs: np.ndarray, n: int, first_sign: float, second_sign: float,
            first_shift: float, second_shift: float) -> np.ndarray:
    # sum_k c_k (shift1 + sign1*v)**(n-k) (shift2 + sign2*v)**k
    out = np.zeros(n + 1)
    for k, ck in enumerate(coeffs):
        if ck == 0.0:
            continue
        f = np.poly1d([first_sign, first_shift]) ** (n - k)
        g = np.poly1d([second_sign, second_shift]) ** k
        term = (f * g).coeffs * ck
        out[n + 1 - term.size:] += term
    return out


def _raw_to_continuous(pz: Poly, n: int | None = None) -> np.ndarray:
    """``(1 - s)**n * pz((1 + s)/(1 - s))`` without normalization."""
    n = pz.degree if n is None else n
    c = pz.pad_to(n)
    return _mobius(c, n, 1.0, -1.0, 1.0, 1.0)


def bilinear_to_continuous(pz, tol=DEFAULT_TOL) -> Poly:
    """Image of a ``z``-polynomial under ``z = (1 + s)/(1 - s)``.

    Returns ``(1 - s)**n * pz((1 + s)/(1 - s))`` with positive leading
    coefficient.

    Examples
    --------
    >>> bilinear_to_continuous(Poly([1, -2]))
    Poly([3.0, -1.0])
    """
    pz = as_poly(pz).require_nonzero()
    n = pz.degree
    at_minus_one = float(pz(-1.0))
    if n >= 1 and abs(at_minus_one) <= tol.strip * np.sum(np.abs(pz.coeffs)):
        raise PreconditionError("root at z = -1: the transform drops degree")
    return Poly(_raw_to_continuous(pz, n), strip=0.0).positive_lc()


def continuous_to_discrete(ps, tol=DEFAULT_TOL) -> DiscretePoly:
    """Image of an ``s``-polynomial under ``s = (z - 1)/(z + 1)``.

    Returns ``(z + 1)**n * ps((z - 1)/(z + 1))`` with positive leading
    coefficient.  A root of ``ps`` at ``s = 1`` lowers the degree of the
    image; that is allowed here (a numerator may have lower degree).
    """
    ps = as_poly(ps).require_nonzero()
    n = ps.degree
    out = _mobius(ps.coeffs, n, 1.0, 1.0, -1.0, 1.0)
    return DiscretePoly(Poly(out, strip=tol.strip).positive_lc().coeffs, strip=0.0)


def schur_check(pz, tol=DEFAULT_TOL) -> bool:
    """True iff every root of ``pz`` lies strictly inside the unit disc."""
    pz = as_poly(pz).require_nonzero()
    if pz.degree < 1:
        raise PreconditionError("Schur test needs degree >= 1")
    return routh_hurwitz(bilinear_to_continuous(pz, tol)).hurwitz


def discrete_spr(cz, az, tol=DEFAULT_TOL) -> SprCertificate:
    """Certify ``Re[cz(e^{jt}) / az(e^{jt})] > 0`` for all ``t`` with ``az`` Schur.

    Both polynomials are mapped with the same power ``(1 - s)**n``, so the
    quotient is unchanged and the question becomes continuous SPR of the
    images.  ``t = pi`` corresponds to ``w -> inf`` and is covered by the
    leading-coefficient condition.
    """
    cz, az = as_poly(cz).require_nonzero(), as_poly(az).require_nonzero()
    n = az.degree
    if cz.degree > n:
        raise PreconditionError("numerator degree exceeds denominator degree")
    C = Poly(_raw_to_continuous(cz, n), strip=0.0)
    A = Poly(_raw_to_continuous(az, n), strip=0.0)
    return is_spr(C, A, tol)


@dataclass
class DiscreteSynthesisResult:
    az: Poly
    bz: Poly
    continuous: SynthesisResult
    c_z: DiscretePoly
    cert_a: SprCertificate
    cert_b: SprCertificate
    trace: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.cert_a.verdict and self.cert_b.verdict and self.c_z.degree <= self.az.degree

    def to_dict(self) -> dict:
        return {
            "az": self.az.tolist(),
            "bz": self.bz.tolist(),
            "c_z": self.c_z.tolist(),
            "continuous": self.continuous.to_dict(),
            "cert_a": self.cert_a.to_dict(),
            "cert_b": self.cert_b.to_dict(),
            "trace": list(self.trace),
        }


def _map_witness(exc: SegmentUnstable, alpha: float, beta: float) -> SegmentUnstable:
    """Translate a witness of the monic-normalized image family back to ``z``.

    The normalized member ``(1-mu) A/alpha + mu B/beta`` is a positive
    multiple of ``(1-lam) A + lam B`` with
    ``lam = (mu/beta) / ((1-mu)/alpha + mu/beta)``.
    """
    v = exc.verdict
    mu = v.witness_lambda
    lam = None if mu is None else (mu / beta) / ((1.0 - mu) / alpha + mu / beta)
    root = v.witness_root
    zroot = None
    if root is not None and root != 1.0:
        zroot = complex((1.0 + root) / (1.0 - root))
    trace = list(v.method_trace) + ["witness mapped back through z = (1+s)/(1-s)"]
    mapped = dataclasses.replace(v, witness_lambda=lam, witness_root=zroot, method_trace=trace)
    return SegmentUnstable(mapped)


def synthesize_discrete(az, bz, config: SynthesisConfig | None = None) -> DiscreteSynthesisResult:
    """Common discrete SPR numerator for the segment between ``az`` and ``bz``.

    The segment is mapped to the left half-plane, synthesized there, and the
    numerator mapped back.  Its degree never exceeds that of the endpoints.

    Raises
    ------
    SegmentUnstable
        Some member of the segment is not Schur; the witness ``lambda``
        refers to the original ``z`` segment and the root is given in ``z``.
    """
    config = config or SynthesisConfig()
    tol = config.tol
    az, bz = as_poly(az).require_nonzero(), as_poly(bz).require_nonzero()
    if az.degree != bz.degree:
        raise PreconditionError(f"degree mismatch: {az.degree} vs {bz.degree}")
    if az.degree < 1:
        raise PreconditionError("discrete endpoints need degree >= 1")
    n = az.degree
    # a common sign keeps the segment parameterization intact under the map
    A = Poly(_raw_to_continuous(az, n), strip=0.0)
    B = Poly(_raw_to_continuous(bz, n), strip=0.0)
    for name, P in (("a", A), ("b", B)):
        if P.degree < n or abs(P.lc) <= tol.strip * P.norm():
            raise PreconditionError(f"endpoint {name} has a root at z = -1")
    if A.lc * B.lc <= 0.0:
        # the segment passes through a member with a root at z = -1
        raise PreconditionError("endpoints map to opposite-sign leading coefficients")
    alpha, beta = A.lc, B.lc
    fam = SegmentFamily.normalized(A, B)
    trace = [f"mapped to continuous family of degree {n}"]
    try:
        res = synthesize(fam, config)
    except SegmentUnstable as exc:
        raise _map_witness(exc, alpha, beta) from None
    trace += res.trace
    cz = continuous_to_discrete(res.c_final, tol)
    if cz.degree > n:
        raise PreconditionError("mapped numerator exceeds the endpoint degree")
    ca = discrete_spr(cz, az, tol)
    cb = discrete_spr(cz, bz, tol)
    trace.append(f"numerator mapped back: degree {cz.degree} <= {n}")
    return DiscreteSynthesisResult(az, bz, res, cz, ca, cb, trace)
