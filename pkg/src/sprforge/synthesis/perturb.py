"""The two small perturbations that turn a feasible ``x`` into an SPR numerator.

``epsilon_select`` moves ``x_1`` down and ``x_{n-1}`` up by ``eps`` so the
real part becomes strictly positive at ``w = 0`` as well.  ``degree_lift``
adds ``delta * h`` with ``h`` monic of degree ``n`` so numerator and
denominator degrees match.  Both bounds are computed from certified
extrema on explicit brackets, halved, and then re-checked by certificate.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..config import DEFAULT_TOL, Tolerances
from ..errors import ConsistencyAlarm, PreconditionError
from ..polycore import (Poly, as_poly, cauchy_root_bound, interval_extrema, rational_extrema,
                        real_roots)
from ..segstab import SegmentFamily
from ..sprcheck import SprCertificate, is_spr, numerator_from_x, re_positive, real_part_numerator

log = logging.getLogger(__name__)


@dataclass
class EpsilonSelection:
    t1: float
    t2: float
    t3: float
    t4: float
    M1: float
    M2: float
    N1: float
    N2: float
    epsilon: float
    ctilde_poly: Poly
    dtilde_poly: Poly
    bound: float
    halvings: int = 0

    def to_dict(self) -> dict:
        return {
            "t1": self.t1, "t2": self.t2, "t3": self.t3, "t4": self.t4,
            "M1": self.M1, "M2": self.M2, "N1": self.N1, "N2": self.N2,
            "epsilon": self.epsilon, "bound": self.bound, "halvings": self.halvings,
            "ctilde_poly": self.ctilde_poly.tolist(),
            "dtilde_poly": self.dtilde_poly.tolist(),
        }


@dataclass
class DeltaSelection:
    omega1: float
    omega2: float
    M3: float
    M4: float
    N3: float
    N4: float
    delta: float
    h: Poly
    bound: float
    halvings: int = 0
    certificates: tuple[SprCertificate, SprCertificate] | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "omega1": self.omega1, "omega2": self.omega2,
            "M3": self.M3, "M4": self.M4, "N3": self.N3, "N4": self.N4,
            "delta": self.delta, "bound": self.bound, "halvings": self.halvings,
            "h": self.h.tolist(),
        }


def perturbation_poly(den: Poly) -> Poly:
    """``p`` with ``Re[(1 - (jw)**(n-2)) conj(den(jw))] = p(w**2)``.

    ``p(0) = den(0) > 0`` and ``p`` is monic of degree ``n-1``, so it is
    positive near zero and near infinity.  The tilde polynomial of the
    perturbation identity is ``t**(n-1) - p(t)``.
    """
    n = den.degree
    q = Poly.monomial(n - 2, -1.0) + Poly([1.0])
    return real_part_numerator(q, den)


def intermediate_numerator(x, eps: float) -> Poly:
    """``s**(n-1) + (x_1 - eps) s**(n-2) + x_2 ... + (x_{n-1} + eps)``."""
    x = np.array(x, dtype=float)
    x[0] -= eps
    x[-1] += eps
    return numerator_from_x(x)


def _bracket(p: Poly) -> tuple[float, float]:
    """``0 < t_lo < t_hi`` with every positive root of ``p`` strictly inside.

    The positive roots are isolated exactly and the bracket is padded by a
    factor 2 on each side; Cauchy bounds cover the root-free case.
    """
    roots = [r for r in real_roots(p, 0.0, np.inf, 2.0 ** -20) if r > 0.0]
    if roots:
        return 0.5 * min(roots), 2.0 * max(roots)
    rev = Poly(p.coeffs[::-1])
    return 0.5 / cauchy_root_bound(rev), 2.0 * cauchy_root_bound(p)


def _eps_terms(g: Poly, den: Poly):
    p = perturbation_poly(den)
    lo, hi = _bracket(p)
    M = interval_extrema(g, lo, hi)[0]
    pmin, _, pmax, _ = interval_extrema(p, lo, hi)
    N = max(abs(pmin), abs(pmax))
    tilde = Poly.monomial(den.degree - 1) - p
    return lo, hi, M, N, tilde


def epsilon_select(fam: SegmentFamily, x, tol: Tolerances = DEFAULT_TOL,
                   max_halvings: int = 60) -> tuple[EpsilonSelection, Poly]:
    """Pick ``eps`` and return it with the degree ``n-1`` intermediate numerator.

    ``x`` may be an :class:`OmegaPoint` or a plain vector; it must satisfy
    ``g_a > 0`` and ``g_b > 0`` on ``(0, inf)``.
    """
    x = np.asarray(getattr(x, "x", x), dtype=float)
    n = fam.n
    if n < 3:
        raise PreconditionError("epsilon selection needs degree >= 3")
    c = numerator_from_x(x)
    g1 = real_part_numerator(c, fam.a)
    g2 = real_part_numerator(c, fam.b)
    t1, t2, M1, N1, ctil = _eps_terms(g1, fam.a)
    t3, t4, M2, N2, dtil = _eps_terms(g2, fam.b)
    if not (M1 > 0 and M2 > 0 and N1 > 0 and N2 > 0):
        raise ConsistencyAlarm(
            f"perturbation bounds not positive (M1={M1:.3g}, M2={M2:.3g}, N1={N1:.3g}, N2={N2:.3g});"
            " the point was not feasible")
    bound = min(M1 / N1, M2 / N2)
    eps = 0.5 * bound
    for k in range(max_halvings + 1):
        ci = intermediate_numerator(x, eps)
        if re_positive(ci, fam.a, tol).verdict and re_positive(ci, fam.b, tol).verdict:
            sel = EpsilonSelection(t1, t2, t3, t4, M1, M2, N1, N2, eps, ctil, dtil, bound, k)
            return sel, ci
        log.debug("eps=%.3g failed certification; halving", eps)
        eps *= 0.5
    raise ConsistencyAlarm("epsilon halving budget exhausted")


def default_h(n: int) -> Poly:
    return Poly.from_roots([-1.0] * n)


def lift(c: Poly, delta: float, h: Poly) -> Poly:
    """Monic ``(c + delta*h) / delta``; a positive rescaling of ``c + delta*h``."""
    coeffs = (c + h.scale(delta)).scale(1.0 / delta).pad_to(h.degree)
    coeffs[0] = 1.0  # exact: c has lower degree, so only h contributes here
    return Poly(coeffs, strip=0.0)


def _delta_terms(c: Poly, h: Poly, den: Poly):
    Ph = real_part_numerator(h, den)
    Pc = real_part_numerator(c, den)
    Q = real_part_numerator(den, den)
    w2 = cauchy_root_bound(Ph)
    M = rational_extrema(Pc, Q, 0.0, w2)[0]
    hmin, _, hmax, _ = rational_extrema(Ph, Q, 0.0, w2)
    N = max(abs(hmin), abs(hmax))
    return float(np.sqrt(w2)), M, N


def degree_lift(c, fam: SegmentFamily, h=None, tol: Tolerances = DEFAULT_TOL,
                max_halvings: int = 60) -> tuple[DeltaSelection, Poly]:
    """Pick ``delta`` so that ``c + delta*h`` is SPR against both endpoints.

    Returns the selection and the monic final numerator.
    """
    c = as_poly(c)
    n = fam.n
    h = default_h(n) if h is None else as_poly(h)
    if h.degree != n or h.lc != 1.0:
        raise PreconditionError(f"h must be monic of degree {n}")
    if c.degree != n - 1:
        raise PreconditionError(f"c must have degree {n - 1}")
    for den in (fam.a, fam.b):
        if not re_positive(c, den, tol).verdict:
            raise PreconditionError("c must have positive real part against both endpoints")
    om1, M3, N3 = _delta_terms(c, h, fam.a)
    om2, M4, N4 = _delta_terms(c, h, fam.b)
    if not (M3 > 0 and M4 > 0 and N3 > 0 and N4 > 0):
        raise ConsistencyAlarm(
            f"lift bounds not positive (M3={M3:.3g}, M4={M4:.3g}, N3={N3:.3g}, N4={N4:.3g})")
    bound = min(M3 / N3, M4 / N4)
    delta = 0.5 * bound
    for k in range(max_halvings + 1):
        cf = lift(c, delta, h)
        ca = is_spr(cf, fam.a, tol)
        cb = ca if fam.degenerate else is_spr(cf, fam.b, tol)
        if ca.verdict and cb.verdict:
            return DeltaSelection(om1, om2, M3, M4, N3, N4, delta, h, bound, k, (ca, cb)), cf
        log.debug("delta=%.3g failed certification; halving", delta)
        delta *= 0.5
    raise ConsistencyAlarm("delta halving budget exhausted")
