"""Ellipses in numerator-coefficient space.

For a monic Hurwitz ``a(s)`` of degree ``n`` and each ``k in 1..n-2`` the
set where all ``c_l`` other than ``c_k, c_{k+1}, c_{k+2}`` vanish is a
2-plane in ``R^{n-1}``; on it the curve ``c_{k+1}**2 - 4 c_k c_{k+2} = 0`` is
an ellipse in the first quadrant.  Inside it the real-part numerator reduces
to ``t**(n-k-2) * (c_k t**2 + c_{k+1} t + c_{k+2})`` with negative
discriminant, hence is positive on ``(0, inf)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateConicError, NotHurwitzError, PreconditionError
from ..polycore import Poly, as_poly, is_hurwitz
from ..sprcheck import cl_affine


@dataclass
class PlaneConstraint:
    """Affine functional ``c_l(x) = const + coeffs @ x`` required to vanish."""

    l: int
    const: float
    coeffs: np.ndarray

    def __call__(self, x) -> float:
        return float(self.const + self.coeffs @ np.asarray(x, dtype=float))


@dataclass
class EllipseSpec:
    k: int
    denominator: Poly
    plane_constraints: list[PlaneConstraint]
    # full-space quadratic q(x) = x Q x + L x + C
    Q: np.ndarray
    L: np.ndarray
    C: float
    # plane parametrization x = origin + basis @ z and restricted quadratic
    origin: np.ndarray
    basis: np.ndarray
    Qz: np.ndarray
    Lz: np.ndarray
    Cz: float
    c0: np.ndarray
    J: np.ndarray

    @property
    def dim(self) -> int:
        return self.origin.size

    def discriminant(self, x) -> float:
        """``c_{k+1}**2 - 4 c_k c_{k+2}`` at ``x`` (negative inside)."""
        c = self.c0 + self.J @ np.asarray(x, dtype=float)
        k = self.k
        return float(c[k] ** 2 - 4.0 * c[k - 1] * c[k + 1])

    def quadratic(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(x @ self.Q @ x + self.L @ x + self.C)

    def conic_discriminant(self) -> float:
        """``B**2 - 4AC`` of the restricted conic; negative means bounded."""
        A, C = self.Qz[0, 0], self.Qz[1, 1]
        B = 2.0 * self.Qz[0, 1]
        return float(B * B - 4.0 * A * C)

    def plane_residual(self, x) -> float:
        if not self.plane_constraints:
            return 0.0
        return max(abs(pc(x)) for pc in self.plane_constraints)

    def to_x(self, z) -> np.ndarray:
        return self.origin + self.basis @ np.asarray(z, dtype=float)

    def _center_z(self) -> tuple[np.ndarray, float]:
        if self.conic_discriminant() >= 0.0 or self.Qz[0, 0] <= 0.0:
            raise DegenerateConicError(f"ellipse {self.k}: restricted conic is not bounded")
        zc = -0.5 * np.linalg.solve(self.Qz, self.Lz)
        qc = float(zc @ self.Qz @ zc + self.Lz @ zc + self.Cz)
        if qc >= 0.0:
            raise DegenerateConicError(f"ellipse {self.k}: empty interior")
        return zc, qc

    def center(self) -> np.ndarray:
        zc, _ = self._center_z()
        return self.to_x(zc)

    def boundary(self, m: int = 256) -> np.ndarray:
        """``m`` points on the ellipse, shape ``(m, n-1)``."""
        zc, qc = self._center_z()
        Lc = np.linalg.cholesky(self.Qz)
        th = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
        U = np.stack([np.cos(th), np.sin(th)])
        Z = zc[:, None] + np.sqrt(-qc) * np.linalg.solve(Lc.T, U)
        return (self.origin[:, None] + self.basis @ Z).T

    def linear_range(self, w) -> tuple[float, float]:
        """Min and max of ``w @ x`` over the closed ellipse."""
        zc, qc = self._center_z()
        w = np.asarray(w, dtype=float)
        wz = self.basis.T @ w
        mid = float(w @ self.to_x(zc))
        half = float(np.sqrt(-qc * (wz @ np.linalg.solve(self.Qz, wz))))
        return mid - half, mid + half

    def tangency_residuals(self) -> tuple[float, float]:
        """Relative discriminant of ``q`` along the lines ``c_k = 0`` and ``c_{k+2} = 0``.

        A zero value means the line touches the ellipse at exactly one point.
        """
        out = []
        for idx in (self.k - 1, self.k + 1):
            e = self.c0[idx] + self.J[idx] @ self.origin
            f = self.basis.T @ self.J[idx]
            d = np.array([-f[1], f[0]])
            z0 = -e * f / (f @ f)
            alpha = float(d @ self.Qz @ d)
            beta = float(2.0 * z0 @ self.Qz @ d + self.Lz @ d)
            gamma = float(z0 @ self.Qz @ z0 + self.Lz @ z0 + self.Cz)
            disc = beta * beta - 4.0 * alpha * gamma
            out.append(abs(disc) / max(beta * beta, abs(4.0 * alpha * gamma), 1e-300))
        return out[0], out[1]


def _restrict(Q, L, C, origin, basis):
    Qz = basis.T @ Q @ basis
    Qz = 0.5 * (Qz + Qz.T)
    Lz = (2.0 * origin @ Q + L) @ basis
    Cz = float(origin @ Q @ origin + L @ origin + C)
    return Qz, Lz, Cz


def build_ellipse(den, k: int) -> EllipseSpec:
    den = as_poly(den)
    n = den.degree
    c0, J = cl_affine(den)
    others = [l for l in range(1, n + 1) if l not in (k, k + 1, k + 2)]
    constraints = [PlaneConstraint(l, float(c0[l - 1]), J[l - 1].copy()) for l in others]
    if others:
        A = J[[l - 1 for l in others]]
        rhs = -c0[[l - 1 for l in others]]
        origin = np.linalg.lstsq(A, rhs, rcond=None)[0]
        _, sv, vt = np.linalg.svd(A)
        rank = int(np.sum(sv > 1e-12 * sv[0]))
        if rank != len(others):
            raise DegenerateConicError(f"ellipse {k}: plane constraints are dependent")
        basis = vt[rank:].T
    else:
        origin = np.zeros(n - 1)
        basis = np.eye(n - 1)
    e1, f1 = c0[k], J[k]
    e0, f0 = c0[k - 1], J[k - 1]
    e2, f2 = c0[k + 1], J[k + 1]
    Q = np.outer(f1, f1) - 2.0 * (np.outer(f0, f2) + np.outer(f2, f0))
    L = 2.0 * e1 * f1 - 4.0 * (e0 * f2 + e2 * f0)
    C = float(e1 * e1 - 4.0 * e0 * e2)
    Qz, Lz, Cz = _restrict(Q, L, C, origin, basis)
    return EllipseSpec(k, den, constraints, Q, L, C, origin, basis, Qz, Lz, Cz, c0, J)


def build_ellipses(den) -> list[EllipseSpec]:
    """All ``n - 2`` ellipses of a monic Hurwitz denominator of degree ``n >= 3``."""
    den = as_poly(den)
    if den.degree < 3:
        raise PreconditionError("ellipse family needs degree >= 3")
    if den.lc != 1.0:
        raise PreconditionError("denominator must be monic")
    if not is_hurwitz(den):
        raise NotHurwitzError("ellipse geometry needs a Hurwitz denominator")
    return [build_ellipse(den, k) for k in range(1, den.degree - 1)]


def ellipse_interior_point(spec: EllipseSpec) -> np.ndarray:
    """Center of the ellipse: the minimizer of the discriminant on its plane."""
    x = spec.center()
    if spec.discriminant(x) >= 0.0:
        raise DegenerateConicError(f"ellipse {spec.k}: center not interior")
    return x
