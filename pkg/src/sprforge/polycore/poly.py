"""Dense real-coefficient univariate polynomials.

Coefficients are stored in *descending* powers, ``coeffs[0]`` being the
leading coefficient, which is the ordering used throughout the package and
in every file format it reads or writes.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..config import DEFAULT_TOL


class ZeroPolynomialError(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


def _strip(coeffs: np.ndarray, rel: float) -> np.ndarray:
    if coeffs.size == 0:
        return coeffs
    scale = np.max(np.abs(coeffs))
    if scale == 0.0:
        return coeffs[:0]
    keep = np.nonzero(np.abs(coeffs) > rel * scale)[0]
    return coeffs[keep[0]:]


class Poly:
    """Immutable polynomial with float64 coefficients in descending powers.

    Leading coefficients whose magnitude is at most ``strip`` times the
    largest coefficient are dropped on construction.  The zero polynomial has
    an empty coefficient array and ``degree == -1``.

    Examples
    --------
    >>> Poly([1, 1]) * Poly([1, 1])
    Poly([1.0, 2.0, 1.0])
    >>> Poly([1, 3, 3, 1]).derive()
    Poly([3.0, 6.0, 3.0])
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[float] | "Poly", strip: float | None = None):
        if isinstance(coeffs, Poly):
            self._c = coeffs._c
            return
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=float).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("polynomial coefficients must be finite")
        c = _strip(c, DEFAULT_TOL.strip if strip is None else strip)
        c.setflags(write=False)
        self._c = c

    # -- construction helpers -------------------------------------------------
    @classmethod
    def zero(cls) -> "Poly":
        return cls([])

    @classmethod
    def monomial(cls, degree: int, coeff: float = 1.0) -> "Poly":
        c = np.zeros(degree + 1)
        c[0] = coeff
        return cls(c)

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "Poly":
        return cls(np.real(np.poly(np.asarray(roots))))

    @classmethod
    def from_ascending(cls, coeffs: Iterable[float]) -> "Poly":
        return cls(np.asarray(list(coeffs), dtype=float)[::-1])

    # -- basic properties -----------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    @property
    def is_zero(self) -> bool:
        return self._c.size == 0

    @property
    def lc(self) -> float:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return float(self._c[0])

    def ascending(self) -> np.ndarray:
        return self._c[::-1].copy()

    def coeff(self, power: int) -> float:
        """Coefficient of ``s**power`` (zero outside the stored range)."""
        if power < 0 or power > self.degree:
            return 0.0
        return float(self._c[self.degree - power])

    def norm(self) -> float:
        return float(np.max(np.abs(self._c))) if self._c.size else 0.0

    def tolist(self) -> list[float]:
        return [float(v) for v in self._c]

    def to_fractions(self) -> list[Fraction]:
        return [Fraction(float(v)) for v in self._c]

    def require_nonzero(self, what: str = "polynomial") -> "Poly":
        if self.is_zero:
            raise ZeroPolynomialError(f"{what} must be nonzero")
        return self

    # -- arithmetic -----------------------------------------------------------
    def _padded(self, other: "Poly") -> tuple[np.ndarray, np.ndarray]:
        m = max(self._c.size, other._c.size)
        p = np.zeros(m)
        q = np.zeros(m)
        if self._c.size:
            p[m - self._c.size:] = self._c
        if other._c.size:
            q[m - other._c.size:] = other._c
        return p, q

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        p, q = self._padded(other)
        return Poly(p + q, strip=0.0)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        p, q = self._padded(other)
        return Poly(p - q, strip=0.0)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly(-self._c, strip=0.0)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly.zero()
            return Poly(np.convolve(self._c, other._c), strip=0.0)
        return self.scale(float(other))

    __rmul__ = __mul__

    def scale(self, k: float) -> "Poly":
        return Poly(self._c * float(k), strip=0.0)

    def derive(self) -> "Poly":
        d = self.degree
        if d <= 0:
            return Poly.zero()
        return Poly(self._c[:-1] * np.arange(d, 0, -1), strip=0.0)

    def compose_affine(self, alpha: float, beta: float) -> "Poly":
        """Return ``p(alpha*s + beta)``."""
        if beta == 0.0:
            powers = float(alpha) ** np.arange(self.degree, -1, -1) if self._c.size else 1.0
            return Poly(self._c * powers, strip=0.0)
        inner = Poly([alpha, beta], strip=0.0)
        out = Poly.zero()
        for c in self._c:
            out = out * inner + float(c)
        return out

    def monic(self) -> "Poly":
        c = self.require_nonzero()._c / self.lc
        c[0] = 1.0  # exact, whatever the rounding of lc / lc
        return Poly(c, strip=0.0)

    def positive_lc(self) -> "Poly":
        return -self if self.lc < 0 else self

    def pad_to(self, degree: int) -> np.ndarray:
        """Coefficient vector of length ``degree + 1`` (leading zeros allowed)."""
        if self.degree > degree:
            raise ValueError(f"degree {self.degree} exceeds {degree}")
        out = np.zeros(degree + 1)
        if self._c.size:
            out[degree + 1 - self._c.size:] = self._c
        return out

    # -- evaluation -----------------------------------------------------------
    def __call__(self, x):
        if self.is_zero:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        return np.polyval(self._c, x)

    def even_odd(self) -> tuple["Poly", "Poly"]:
        """Split ``p(s) = E(s**2) + s*O(s**2)`` and return ``(E, O)``."""
        asc = self.ascending()
        return Poly.from_ascending(asc[0::2]), Poly.from_ascending(asc[1::2])

    def eval_at_jomega(self, omega):
        r"""Evaluate ``p(j*omega)`` from the even/odd split.

        ``Re = E(-omega**2)`` and ``Im = omega * O(-omega**2)``, which makes
        ``p(-j omega) == conj(p(j omega))`` hold bit-for-bit.
        """
        even, odd = self.even_odd()
        w = np.asarray(omega, dtype=float)
        u = -(w * w)
        return even(u) + 1j * (w * odd(u))

    # -- dunder plumbing ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    def __hash__(self) -> int:
        return hash(tuple(self._c.tolist()))

    def __len__(self) -> int:
        return self._c.size

    def __repr__(self) -> str:
        return f"Poly({self.tolist()})"

    def allclose(self, other: "Poly", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        p, q = self._padded(other)
        return bool(np.allclose(p, q, rtol=rtol, atol=atol))


def as_poly(p) -> Poly:
    return p if isinstance(p, Poly) else Poly(p)


def poly_arith(p, q=None, op: str = "add", *, alpha: float | None = None,
               beta: float | None = None, k: float | None = None) -> Poly:
    """Dispatch table over the elementary polynomial operations.

    ``op`` is one of ``add``, ``sub``, ``mul``, ``scale`` (uses ``k``),
    ``derive`` and ``compose_affine`` (uses ``alpha`` and ``beta``).
    """
    p = as_poly(p)
    if op in ("add", "sub", "mul"):
        if q is None:
            raise ValueError(f"{op} needs two operands")
        q = as_poly(q)
        if op == "add":
            return p + q
        if op == "sub":
            return p - q
        return p * q
    if op == "scale":
        return p.scale(1.0 if k is None else k)
    if op == "derive":
        return p.derive()
    if op == "compose_affine":
        if alpha is None or beta is None:
            raise ValueError("compose_affine needs alpha and beta")
        return p.require_nonzero().compose_affine(alpha, beta)
    raise ValueError(f"unknown op {op!r}")


def eval_at_jomega(p, omega):
    return as_poly(p).eval_at_jomega(omega)


def cauchy_root_bound(p) -> float:
    """Cauchy bound ``1 + max |c_i / c_lead|`` on the moduli of all roots."""
    p = as_poly(p).require_nonzero()
    if p.degree == 0:
        return 1.0
    return 1.0 + float(np.max(np.abs(p.coeffs[1:] / p.coeffs[0])))
