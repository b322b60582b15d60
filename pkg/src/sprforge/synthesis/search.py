"""Finding a numerator that is positive-real against both segment endpoints.

The feasible set ``{x : g_a(t; x) > 0 and g_b(t; x) > 0 on (0, inf)}`` is
convex because each ``g`` is affine in ``x``.  Cheap geometric seeds built
from the ellipse centers are tried first; a linear program over a frequency
grid with cutting-plane refinement is the fallback.  Whatever produces
``x``, membership is decided by Sturm certificates, never by the seed's
provenance.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from ..config import DEFAULT_TOL, SynthesisConfig, Tolerances
from ..errors import DegenerateConicError, PreconditionError, SearchExhausted
from ..polycore import (Poly, PositivityProof, cauchy_root_bound, positive_on_halfline,
                        rational_extrema)
from ..segstab import SegmentFamily, segment_hurwitz
from ..sprcheck import cl_affine, numerator_from_x, real_part_numerator
from .ellipses import build_ellipses, ellipse_interior_point

log = logging.getLogger(__name__)


@dataclass
class OmegaPoint:
    x: np.ndarray
    source: str
    margins: tuple[float, float]
    proofs: tuple[PositivityProof, PositivityProof]

    @property
    def numerator(self) -> Poly:
        return numerator_from_x(self.x)

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "source": self.source,
            "margins": list(self.margins),
            "proofs": [p.to_dict() for p in self.proofs],
        }


@dataclass
class LPFeasibility:
    x: np.ndarray
    rounds: int
    margin: float
    grid: np.ndarray = field(repr=False)


def _rescale(coeffs: np.ndarray, sigma: float) -> np.ndarray:
    """Coefficients of ``p(sigma*s) / sigma**deg``."""
    return np.asarray(coeffs, dtype=float) * sigma ** -np.arange(len(coeffs))


def frequency_scale(fam: SegmentFamily) -> float:
    """``(a_n b_n)**(1/2n)``, a geometric-mean root magnitude of the endpoints."""
    n = fam.n
    sigma = float((abs(fam.a.coeffs[-1]) * abs(fam.b.coeffs[-1])) ** (1.0 / (2 * n)))
    return sigma if np.isfinite(sigma) and sigma > 0.0 else 1.0


def weighted_margin(num: Poly, den: Poly, sigma: float = 1.0) -> float:
    """``inf`` over ``t >= 0`` of ``(1 + t) * Re[num/den](j sigma sqrt(t))``.

    For a degree ``n-1`` numerator this stays bounded away from zero exactly
    when the real part is positive on the closed half-line including both
    ends, so it is a scale-aware feasibility margin.  ``sigma`` rescales
    frequency so that margins of different families are comparable.
    Critical points are isolated exactly; the ``t -> inf`` limit is added.
    """
    if sigma != 1.0:
        num = Poly(_rescale(num.coeffs, sigma), strip=0.0)
        den = Poly(_rescale(den.coeffs, sigma), strip=0.0)
    P = real_part_numerator(num, den) * Poly([1.0, 1.0])
    Q = real_part_numerator(den, den)
    crit = P.derive() * Q - P * Q.derive()
    hi = cauchy_root_bound(crit) if crit.degree > 0 else 1.0
    lo_val = rational_extrema(P, Q, 0.0, hi)[0]
    if P.degree == Q.degree:
        limit = P.lc / Q.lc
    elif P.degree < Q.degree:
        limit = 0.0
    else:
        limit = np.inf if P.lc > 0 else -np.inf
    return float(min(lo_val, limit))


_SCREEN_T = np.geomspace(1e-8, 1e8, 161)


def _clearly_negative(g: Poly) -> bool:
    """Cheap rejection: ``g`` is well below zero at some sampled ``t > 0``."""
    vals = g(_SCREEN_T)
    scale = np.polyval(np.abs(g.coeffs), _SCREEN_T)
    return bool(np.any(vals < -1e-8 * scale))


def certify_point(fam: SegmentFamily, x, source: str,
                  tol: Tolerances = DEFAULT_TOL) -> Optional[OmegaPoint]:
    """Return an :class:`OmegaPoint` if ``x`` is certified feasible, else ``None``."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        return None
    c = numerator_from_x(x)
    dens = (fam.a,) if fam.degenerate else (fam.a, fam.b)
    gs = [real_part_numerator(c, d) for d in dens]
    if any(_clearly_negative(g) for g in gs):
        return None
    proofs = []
    for d in dens:
        proof = positive_on_halfline(real_part_numerator(c, d), strict_at_zero=False, tol=tol)
        if not proof.verdict:
            return None
        proofs.append(proof)
    if len(proofs) == 1:
        proofs.append(proofs[0])
    sigma = frequency_scale(fam)
    ma = weighted_margin(c, fam.a, sigma)
    mb = ma if fam.degenerate else weighted_margin(c, fam.b, sigma)
    return OmegaPoint(x, source, (ma, mb), (proofs[0], proofs[1]))


def seed_points(fam: SegmentFamily) -> list[tuple[str, np.ndarray]]:
    """Candidate points in a fixed priority order.

    Centroids of the ellipse centers come first: a single center makes
    every real-part coefficient but three vanish, so for ``n >= 4`` it sits
    on the edge of the feasible cone, while averages of centers do not.
    Then the centers of ``a`` and ``b`` themselves, then points on the
    segments between pairs of centers (midpoints first).
    """
    if fam.n < 3:
        return []
    centers = []
    for tag, den in (("a", fam.a), ("b", fam.b)):
        if tag == "b" and fam.degenerate:
            break
        for spec in build_ellipses(den):
            try:
                centers.append((f"{tag}{spec.k}", ellipse_interior_point(spec)))
            except DegenerateConicError as exc:
                log.debug("skipping ellipse %s%d: %s", tag, spec.k, exc)
    seeds = []
    groups = [("all", centers)]
    if not fam.degenerate:
        groups += [(tag, [c for c in centers if c[0][0] == tag]) for tag in ("a", "b")]
    for tag, group in groups:
        if len(group) > 1:
            seeds.append((f"centroid({tag})", np.mean([x for _, x in group], axis=0)))
    seeds += [(f"ellipse_center({name})", x) for name, x in centers]
    for theta in (0.5, 0.25, 0.75):
        for i in range(len(centers)):
            for j in range(i + 1, len(centers)):
                (ni, xi), (nj, xj) = centers[i], centers[j]
                seeds.append((f"segment({ni},{nj},{theta})", theta * xi + (1.0 - theta) * xj))
    return seeds


def _scaled_family(fam: SegmentFamily) -> tuple[float, np.ndarray, np.ndarray]:
    sigma = frequency_scale(fam)
    return sigma, _rescale(fam.a.coeffs, sigma), _rescale(fam.b.coeffs, sigma)


def _lp_rows(den: np.ndarray, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rows of ``(1+t) Re[c(jw)/den(jw)] = const + row @ x`` at ``t = w**2``."""
    n = den.size - 1
    w = np.sqrt(ts)
    s = 1j * w
    dv = np.polyval(den, s)
    # s**(n-1-k) for k = 0..n-1; k = 0 is the fixed leading term
    powers = s[:, None] ** (n - 1 - np.arange(n))[None, :]
    vals = (powers / dv[:, None]).real * (1.0 + ts)[:, None]
    return vals[:, 0], vals[:, 1:]


def _limit_rows(den: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rows at ``t = 0`` and ``t -> inf``."""
    n = den.size - 1
    const = np.zeros(2)
    rows = np.zeros((2, n - 1))
    rows[0, -1] = 1.0 / den[-1]            # Re[c/d](0) = x_{n-1} / d_n
    const[1] = den[1]                      # (1+t) Re[c/d] -> d_1 - x_1
    rows[1, 0] = -1.0
    return const, rows


def _solve_lp(dens, ts, box_hi, margin):
    consts, rows = [], []
    for d in dens:
        c, r = _lp_rows(d, ts)
        consts.append(c)
        rows.append(r)
        c, r = _limit_rows(d)
        consts.append(c)
        rows.append(r)
    const = np.concatenate(consts)
    R = np.vstack(rows)
    m, k = R.shape
    # maximize tau subject to const + R x >= tau  <=>  -R x + tau <= const
    A_ub = np.hstack([-R, np.ones((m, 1))])
    cost = np.zeros(k + 1)
    cost[-1] = -1.0
    bounds = [(0.0, float(hi)) for hi in box_hi] + [(None, None)]
    res = linprog(cost, A_ub=A_ub, b_ub=const, bounds=bounds, method="highs")
    if res.status != 0:
        return None, -np.inf
    tau = float(res.x[-1])
    if tau < margin:
        return None, tau
    return res.x[:-1], tau


def _worst_t(num: Poly, den: Poly, proof: PositivityProof) -> list[float]:
    """Frequencies (in ``t``) where certification failed or nearly failed."""
    out = []
    if proof.witness is not None and proof.witness > 0.0:
        out.append(float(proof.witness))
    ts = np.geomspace(1e-6, 1e6, 400)
    P = real_part_numerator(num, den)
    Q = real_part_numerator(den, den)
    vals = P(ts) * (1.0 + ts) / Q(ts)
    out.append(float(ts[int(np.argmin(vals))]))
    return out


def lp_grid_feasibility(fam: SegmentFamily, grid=None, margin: float = 1e-9,
                        max_rounds: int = 40, tol: Tolerances = DEFAULT_TOL
                        ) -> Optional[LPFeasibility]:
    """Linear-programming route to a certified common numerator.

    ``grid`` holds ``t = w**2`` sample points in frequency-normalized units
    (the endpoints are rescaled so that ``sqrt(a_n b_n)`` becomes 1).  The LP
    maximizes the smallest weighted real part over the grid; if the result
    fails Sturm certification, the offending frequencies join the grid.
    Returns ``None`` when the LP cannot reach ``margin``.
    """
    n = fam.n
    if n < 2:
        raise PreconditionError("LP search needs degree >= 2")
    if margin <= 0.0:
        raise PreconditionError("margin must be positive")
    ts = np.geomspace(1e-3, 1e3, 64) if grid is None else np.asarray(grid, dtype=float).ravel()
    if ts.size == 0 or np.any(ts < 0.0):
        raise PreconditionError("grid must be a nonempty set of nonnegative t values")
    sigma, a_hat, b_hat = _scaled_family(fam)
    dens = [a_hat] if fam.degenerate else [a_hat, b_hat]
    rho = 4.0 * max(cauchy_root_bound(Poly(d)) for d in dens)
    box_hi = np.array([comb(n - 1, i) * rho ** i for i in range(1, n)], dtype=float)
    scale_back = sigma ** np.arange(1, n)
    for rnd in range(1, max_rounds + 1):
        xh, tau = _solve_lp(dens, ts, box_hi, margin)
        if xh is None:
            log.debug("LP infeasible at margin %.3g (best %.3g)", margin, tau)
            return None
        x = xh * scale_back
        pt = certify_point(fam, x, "lp_fallback", tol)
        if pt is not None:
            return LPFeasibility(x, rnd, tau, ts)
        # cutting planes in normalized units
        c = numerator_from_x(xh)
        new = []
        for d in dens:
            dp = Poly(d)
            proof = positive_on_halfline(real_part_numerator(c, dp), strict_at_zero=False, tol=tol)
            if not proof.verdict:
                new += _worst_t(c, dp, proof)
        new = [t for t in new if np.isfinite(t) and t > 0.0 and not np.any(np.isclose(ts, t))]
        if not new:
            new = [float(t) for t in np.geomspace(ts.min() / 10.0, ts.max() * 10.0, 2)]
        ts = np.sort(np.concatenate([ts, new]))
    return None


def find_common_point(fam: SegmentFamily, config: SynthesisConfig | None = None,
                      checked: bool = False) -> OmegaPoint:
    """Certified ``x`` with both real-part numerators positive on ``(0, inf)``.

    Raises
    ------
    PreconditionError
        If the segment is not Hurwitz stable (no such ``x`` can exist).
    SearchExhausted
        If neither the seeds nor the LP fallback produced a certified point.
    """
    config = config or SynthesisConfig()
    tol = config.tol
    if fam.n < 2:
        raise PreconditionError("common-point search needs degree >= 2")
    if not checked:
        verdict = segment_hurwitz(fam, tol)
        if not verdict.stable:
            raise PreconditionError(
                f"segment is not Hurwitz stable (witness lambda={verdict.witness_lambda})")
    seeds = seed_points(fam)
    tried = []
    floor = config.seed_margin
    fallback: Optional[OmegaPoint] = None
    if seeds:
        evaluate = lambda item: certify_point(fam, item[1], item[0], tol)
        if config.workers > 1:
            with ThreadPoolExecutor(config.workers) as pool:
                results = list(pool.map(evaluate, seeds))
        else:
            results = []
            for item in seeds:
                results.append(evaluate(item))
                if results[-1] is not None and min(results[-1].margins) >= floor:
                    break
        # fixed priority order regardless of scheduling
        for (name, _), res in zip(seeds, results):
            tried.append(name)
            if res is None:
                continue
            if min(res.margins) >= floor:
                return res
            if fallback is None or min(res.margins) > min(fallback.margins):
                fallback = res
    lo, hi = config.lp_grid_range
    grid = np.geomspace(lo, hi, config.lp_grid_points)
    margin = config.lp_margin
    lp = None
    for _ in range(4):
        lp = lp_grid_feasibility(fam, grid, margin, config.lp_max_rounds, tol)
        if lp is not None:
            break
        margin *= 1e-3
    if lp is not None:
        pt = certify_point(fam, lp.x, f"lp_fallback(rounds={lp.rounds})", tol)
        if pt is not None and (fallback is None or min(pt.margins) >= min(fallback.margins)):
            return pt
    if fallback is not None:
        log.warning("using seed %s with small margin %.3g", fallback.source, min(fallback.margins))
        return fallback
    raise SearchExhausted("no certified common point found",
                          {"seeds_tried": tried, "lp_margin": margin,
                           "lp_rounds": config.lp_max_rounds})
