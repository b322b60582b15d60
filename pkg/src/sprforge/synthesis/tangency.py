"""Hyperplanes ``sum_i x_i / u_i = 1`` touching every ellipse of a denominator."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import DEFAULT_TOL, Tolerances
from ..errors import PreconditionError
from ..polycore import Poly, as_poly


@dataclass
class TangencyLine:
    u: np.ndarray
    denominator: Poly

    @property
    def normal(self) -> np.ndarray:
        """``w`` with ``L = {x : w @ x = 1}``."""
        return 1.0 / self.u

    def __call__(self, x) -> float:
        return float(self.normal @ np.asarray(x, dtype=float))


def _u1_coefficients(a: np.ndarray, u2: float) -> tuple[float, float]:
    """Split the intercept equation into ``A u1 + B = 0``."""
    n = a.size - 1
    A = B = 0.0
    for i in range(n + 1):
        sgn = -1.0 if ((i + 1) // 2) % 2 else 1.0
        term = sgn * a[i] * u2 ** (n // 2 - i // 2)
        if i % 2 == 0:
            A += term  # u1 appears to the power (i+1) mod 2
        else:
            B += term
    return A, B


def intercepts(u1: float, u2: float, n: int) -> np.ndarray:
    """``u_j = (-1)**floor((j-1)/2) * u1**(j mod 2) * u2**floor(j/2)``, ``j = 1..n-1``."""
    u = [u1, u2]
    for j in range(3, n):
        sgn = -1.0 if ((j - 1) // 2) % 2 else 1.0
        u.append(sgn * u1 ** (j % 2) * u2 ** (j // 2))
    return np.array(u[: n - 1], dtype=float)


def tangency_line(den, u2: float, tol: Tolerances = DEFAULT_TOL) -> TangencyLine:
    """Solve for ``u1`` given ``u2`` and fill the remaining intercepts.

    Examples
    --------
    >>> tangency_line(Poly([1, 3, 3, 1]), 4.0).u
    array([11.,  4.])
    """
    den = as_poly(den)
    n = den.degree
    if n < 3:
        raise PreconditionError("tangency lines need degree >= 3")
    if den.lc != 1.0:
        raise PreconditionError("denominator must be monic")
    if not u2 > 0.0:
        raise PreconditionError("u2 must be positive")
    a = den.coeffs
    A, B = _u1_coefficients(a, float(u2))
    scale = max(abs(A), abs(B), 1.0)
    if abs(A) <= tol.strip * scale:
        raise PreconditionError("intercept equation has no u1 term at this u2")
    u1 = -B / A
    if u1 <= 0.0:
        raise PreconditionError(f"u1 = {u1:.6g} is not positive; pick another u2")
    if abs(u1 - a[1]) <= tol.tan * max(1.0, abs(a[1])):
        raise PreconditionError("u1 coincides with a1; pick another u2")
    return TangencyLine(intercepts(u1, float(u2), n), den)
