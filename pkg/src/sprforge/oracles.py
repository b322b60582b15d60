"""Brute-force reference computations.

These are slow, simple and deliberately independent of the certificate
machinery: no Sturm chains, no Routh tables, no elimination.  Tests and the
``certify`` CLI verb use them as a second opinion.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .polycore import Poly, as_poly


@dataclass
class GridReport:
    min_value: float
    argmin: float
    samples: int
    range: tuple[float, float]


@dataclass
class LambdaRootReport:
    max_real_part: float
    at_lambda: float
    samples: int


def hybrid_grid(omega_max: float, samples: int) -> np.ndarray:
    """Strictly increasing grid on ``[-omega_max, omega_max]`` containing 0.

    The positive half is linear up to ``w = 1`` (a quarter of its points)
    and logarithmic beyond; the negative half mirrors it.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    n_pos = samples // 2
    if omega_max <= 1.0:
        pos = np.linspace(0.0, omega_max, n_pos + 1)[1:]
    else:
        n_lin = n_pos // 4
        lin = np.arange(1, n_lin + 1) / max(n_lin, 1)
        log = np.geomspace(1.0, omega_max, n_pos - n_lin + 1)[1:]
        pos = np.concatenate([lin, log])
    neg = -pos[: samples - 1 - n_pos][::-1]
    return np.concatenate([neg, [0.0], pos])


def _polyval_complex(c: np.ndarray, s: np.ndarray) -> np.ndarray:
    out = np.zeros_like(s, dtype=complex)
    for coef in c:
        out = out * s + coef
    return out


def grid_min_real_part(num, den, omega_max: float = 1e6, samples: int = 100_000) -> GridReport:
    """Minimum of ``Re[num(jw)/den(jw)]`` over a hybrid frequency grid.

    Examples
    --------
    >>> r = grid_min_real_part(Poly([1, 3, 3, 1]), Poly([1, 3, 3, 1]), samples=1000)
    >>> r.min_value
    1.0
    """
    num, den = as_poly(num), as_poly(den)
    w = hybrid_grid(omega_max, samples)
    s = 1j * w
    dv = _polyval_complex(den.coeffs, s)
    scale = _polyval_complex(np.abs(den.coeffs), np.abs(w).astype(complex)).real
    if np.any(np.abs(dv) <= 1e-14 * scale):
        k = int(np.argmin(np.abs(dv) / scale))
        raise ZeroDivisionError(f"denominator vanishes on the axis near w={w[k]:.6g}")
    nv = _polyval_complex(num.coeffs, s)
    # Re[n conj(d)] / |d|**2 is exact when num == den
    re = (nv.real * dv.real + nv.imag * dv.imag) / (dv.real * dv.real + dv.imag * dv.imag)
    k = int(np.argmin(re))
    return GridReport(float(re[k]), float(w[k]), int(w.size), (float(w[0]), float(w[-1])))


def sweep(num, den, omega_max: float, samples: int) -> np.ndarray:
    """Rows ``(w, Re f(jw), Im f(jw))`` on the hybrid grid."""
    num, den = as_poly(num), as_poly(den)
    w = hybrid_grid(omega_max, samples)
    f = _polyval_complex(num.coeffs, 1j * w) / _polyval_complex(den.coeffs, 1j * w)
    return np.column_stack([w, f.real, f.imag])


def _companion_stack(coeffs: np.ndarray) -> np.ndarray:
    """Companion matrices for a stack of monic-normalizable coefficient rows."""
    m, k = coeffs.shape
    n = k - 1
    C = np.zeros((m, n, n))
    C[:, 0, :] = -coeffs[:, 1:] / coeffs[:, :1]
    if n > 1:
        idx = np.arange(n - 1)
        C[:, idx + 1, idx] = 1.0
    return C


def max_real_root(p) -> float:
    """Largest real part among the roots of ``p`` (eigenvalues of the companion)."""
    p = as_poly(p)
    if p.degree < 1:
        return -np.inf
    return float(np.max(np.linalg.eigvals(_companion_stack(p.coeffs[None, :])[0]).real))


def lambda_grid_roots(fam, samples: int = 10_000) -> LambdaRootReport:
    """Sup of root real parts over a uniform grid of segment members."""
    a = fam.a.coeffs
    b = fam.b.coeffs
    if a.size != b.size:
        raise ValueError("equal degrees required")
    lam = np.linspace(0.0, 1.0, samples)
    rows = a[None, :] + lam[:, None] * (b - a)[None, :]
    worst = np.empty(samples)
    chunk = 4096
    for start in range(0, samples, chunk):
        sl = slice(start, start + chunk)
        ev = np.linalg.eigvals(_companion_stack(rows[sl]))
        if not np.all(np.isfinite(ev)):
            raise np.linalg.LinAlgError("eigenvalue computation did not converge")
        worst[sl] = ev.real.max(axis=1)
    k = int(np.argmax(worst))
    return LambdaRootReport(float(worst[k]), float(lam[k]), samples)


def brute_force_feasible_x(fam, box, resolution: int):
    """Scan a grid over ``box`` for a numerator making both real parts positive.

    ``box`` is a sequence of ``(lo, hi)`` pairs, one per coordinate of ``x``.
    Only meant for ``n <= 4``.
    """
    from .polycore import positive_on_halfline
    from .sprcheck import numerator_from_x, real_part_numerator

    n = fam.n
    if n > 4:
        raise ValueError("brute-force scan limited to n <= 4")
    box = [tuple(map(float, iv)) for iv in box]
    if len(box) != n - 1:
        raise ValueError(f"box needs {n - 1} intervals")
    if any(hi <= lo for lo, hi in box):
        return None
    axes = [np.linspace(lo, hi, resolution) for lo, hi in box]
    for pt in itertools.product(*axes):
        x = np.array(pt)
        c = numerator_from_x(x)
        if all(positive_on_halfline(real_part_numerator(c, d), strict_at_zero=False).verdict
               for d in (fam.a, fam.b)):
            return x
    return None


def schur_cohn(p) -> bool:
    """Jury/Schur-Cohn recursion: True iff every root lies in the open unit disc."""
    c = np.array(as_poly(p).coeffs, dtype=float)
    while c.size > 1:
        lead, last = c[0], c[-1]
        if abs(last) >= abs(lead):
            return False
        k = last / lead
        c = (c - k * c[::-1])[:-1]
    return True


def unit_circle_grid_min(num, den, samples: int = 100_000) -> GridReport:
    """Minimum of ``Re[num(e^{jt})/den(e^{jt})]`` over ``t`` in ``[-pi, pi]``."""
    num, den = as_poly(num), as_poly(den)
    theta = np.linspace(-np.pi, np.pi, samples)
    z = np.exp(1j * theta)
    f = _polyval_complex(num.coeffs, z) / _polyval_complex(den.coeffs, z)
    k = int(np.argmin(f.real))
    return GridReport(float(f.real[k]), float(theta[k]), samples, (-np.pi, np.pi))
