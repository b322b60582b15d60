"""Strict positive realness of ``num(s)/den(s)`` and the real-part algebra.

For a numerator ``c(s) = s**(n-1) + x_1 s**(n-2) + ... + x_{n-1}`` and a
monic denominator ``a(s)`` of degree ``n`` the frequency response satisfies

    Re[c(jw) conj(a(jw))] = c_1 t**(n-1) + c_2 t**(n-2) + ... + c_n,   t = w**2,

with ``c_l = sum_j (-1)**(l+j) a_j x_{2l-j-1}`` (``a_0 = x_0 = 1``, all other
out-of-range indices zero).  Everything else here builds on that identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import ConsistencyAlarm, NotHurwitzError, PreconditionError
from .polycore import Poly, PositivityProof, RouthResult, as_poly, positive_on_halfline, routh_hurwitz


@dataclass
class RealPartCoeffs:
    values: np.ndarray
    denominator: Poly
    numerator_x: np.ndarray

    def as_poly(self) -> Poly:
        """The polynomial ``g(t) = c_1 t**(n-1) + ... + c_n``."""
        return Poly(self.values, strip=0.0)


def cl_affine(den) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(c0, J)`` with ``c_l(x) = c0[l-1] + J[l-1] @ x``.

    The c_l are affine in the numerator coefficients; this is that map, for a
    monic denominator of degree ``n`` (``J`` has shape ``(n, n-1)``).
    """
    den = as_poly(den)
    n = den.degree
    if n < 1 or den.lc != 1.0:
        raise PreconditionError("cl_affine needs a monic denominator of degree >= 1")
    a = den.coeffs
    c0 = np.zeros(n)
    J = np.zeros((n, max(n - 1, 0)))
    for l in range(1, n + 1):
        for j in range(n + 1):
            idx = 2 * l - j - 1
            sgn = -1.0 if (l + j) % 2 else 1.0
            if idx == 0:
                c0[l - 1] += sgn * a[j]
            elif 1 <= idx <= n - 1:
                J[l - 1, idx - 1] += sgn * a[j]
    return c0, J


def cl_coefficients(den, x) -> RealPartCoeffs:
    """Evaluate the closed-form ``c_1 .. c_n`` for numerator coefficients ``x``.

    Examples
    --------
    >>> cl_coefficients(Poly([1, 3, 3, 1]), [1.0, 0.5]).values
    array([2. , 0.5, 0.5])
    """
    den = as_poly(den)
    x = np.asarray(x, dtype=float).ravel()
    n = den.degree
    if n < 1 or den.lc != 1.0:
        raise PreconditionError("cl_coefficients needs a monic denominator of degree >= 1")
    if x.size != n - 1:
        raise PreconditionError(f"x must have length {n - 1}, got {x.size}")
    a = den.coeffs
    xs = np.concatenate([[1.0], x])
    vals = np.zeros(n)
    for l in range(1, n + 1):
        acc = 0.0
        for j in range(n + 1):
            idx = 2 * l - j - 1
            if 0 <= idx <= n - 1:
                acc += (-1.0) ** (l + j) * a[j] * xs[idx]
        vals[l - 1] = acc
    return RealPartCoeffs(vals, den, x)


def numerator_from_x(x) -> Poly:
    """Monic ``s**(n-1) + x_1 s**(n-2) + ... + x_{n-1}``."""
    return Poly(np.concatenate([[1.0], np.asarray(x, dtype=float).ravel()]), strip=0.0)


def real_part_numerator(num, den) -> Poly:
    """Polynomial ``P`` with ``P(w**2) = Re[num(jw) conj(den(jw))]``.

    Uses the even/odd split ``p(s) = E(s**2) + s O(s**2)``, giving
    ``P(t) = E_n(-t) E_d(-t) + t O_n(-t) O_d(-t)``.

    Examples
    --------
    >>> real_part_numerator(Poly([1, 2]), Poly([1, 1]))
    Poly([1.0, 2.0])
    """
    num, den = as_poly(num), as_poly(den).require_nonzero("denominator")
    if num.degree > den.degree:
        raise PreconditionError("numerator degree exceeds denominator degree")
    if num.is_zero:
        return Poly.zero()
    ne, no = num.even_odd()
    de, do = den.even_odd()
    flip = lambda p: p.compose_affine(-1.0, 0.0) if not p.is_zero else p
    t = Poly([1.0, 0.0])
    return flip(ne) * flip(de) + t * flip(no) * flip(do)


@dataclass
class SprCertificate:
    degree_match: bool
    denominator_hurwitz: RouthResult
    positivity: Optional[PositivityProof]
    leading_positive: bool
    numerator_stability_note: str = ""
    tolerances: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return bool(self.degree_match and self.denominator_hurwitz.hurwitz
                    and self.leading_positive
                    and self.positivity is not None and self.positivity.verdict)

    def __bool__(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "degree_match": self.degree_match,
            "denominator_hurwitz": self.denominator_hurwitz.to_dict(),
            "positivity": None if self.positivity is None else self.positivity.to_dict(),
            "leading_positive": self.leading_positive,
            "numerator_stability_note": self.numerator_stability_note,
            "tolerances": dict(self.tolerances),
        }


def is_spr(num, den, tol: Tolerances = DEFAULT_TOL) -> SprCertificate:
    """Certify whether ``num/den`` is strictly positive real.

    SPR here means equal degrees, ``den`` Hurwitz, and the real-part
    numerator strictly positive on ``[0, inf)`` with a positive leading
    coefficient (so the certificate is also closed at ``w -> inf``).
    """
    num = as_poly(num).require_nonzero("numerator")
    den = as_poly(den).require_nonzero("denominator")
    degree_match = num.degree == den.degree
    if den.degree >= 1:
        routh = routh_hurwitz(den)
    else:
        routh = RouthResult(False, [[den.lc]], 0, 0, ["constant denominator"])
    if routh.hurwitz and den.lc < 0:
        # normalize the pair so the denominator has positive leading coefficient
        num, den = -num, -den
    positivity = None
    leading_positive = False
    note = ""
    if num.degree <= den.degree:
        P = real_part_numerator(num, den)
        if not P.is_zero:
            positivity = positive_on_halfline(P, strict_at_zero=True, tol=tol)
            leading_positive = P.lc > 0
    if positivity is not None and positivity.verdict and routh.hurwitz:
        note = _property1_note(num, den)
    return SprCertificate(degree_match, routh, positivity, leading_positive, note, tol.to_dict())


def _property1_note(num: Poly, den: Poly) -> str:
    try:
        d = check_property1(num, den, _checked=True)
    except ConsistencyAlarm as exc:
        return f"ALARM: {exc}"
    return f"numerator in H^{d}"


@dataclass
class RePositivity:
    verdict: bool
    proof: PositivityProof

    def __bool__(self) -> bool:
        return self.verdict


def re_positive(num, den, tol: Tolerances = DEFAULT_TOL) -> RePositivity:
    """Decide ``Re[num(jw)/den(jw)] > 0`` for every real ``w``.

    Raises
    ------
    NotHurwitzError
        If ``den`` is not Hurwitz; axis poles make the question ill-posed.
    """
    num = as_poly(num).require_nonzero("numerator")
    den = as_poly(den).require_nonzero("denominator")
    if den.degree < 1 or not routh_hurwitz(den).hurwitz:
        raise NotHurwitzError("re_positive needs a Hurwitz denominator")
    if num.degree not in (den.degree - 1, den.degree):
        raise PreconditionError("numerator degree must be n-1 or n")
    if den.lc < 0:
        num, den = -num, -den
    P = real_part_numerator(num, den)
    if P.is_zero:
        proof = PositivityProof(P, "[0,inf)", [], (0, 0), False, witness=0.0, witness_value=0.0)
        return RePositivity(False, proof)
    proof = positive_on_halfline(P, strict_at_zero=True, tol=tol)
    return RePositivity(proof.verdict, proof)


def check_property1(num, den, tol: Tolerances = DEFAULT_TOL, _checked: bool = False) -> int:
    """Return ``d`` such that ``num`` lies in ``H^d`` with ``d in {n, n-1}``.

    Requires ``den`` Hurwitz and ``Re[num/den] > 0`` on the axis.  If the
    numerator is in neither class a :class:`ConsistencyAlarm` is raised,
    since theory rules that out and it points at a numerical fault upstream.
    Nonzero constants count as degree-0 Hurwitz.
    """
    num, den = as_poly(num), as_poly(den)
    if not _checked:
        if not re_positive(num, den, tol).verdict:
            raise PreconditionError("check_property1 needs Re[num/den] > 0 on the axis")
    n = den.degree
    d = num.degree
    if d not in (n, n - 1):
        raise ConsistencyAlarm(f"numerator degree {d} not in {{{n}, {n - 1}}}")
    if d == 0:
        if num.lc * den.lc > 0:
            return 0
        raise ConsistencyAlarm("constant numerator of the wrong sign")
    if not routh_hurwitz(num).hurwitz:
        raise ConsistencyAlarm("numerator with positive real part is not Hurwitz")
    return d
