"""Routh array construction and the Hurwitz test built on it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .poly import Poly, ZeroPolynomialError, as_poly

# stand-in for an exactly-zero pivot; the verdict is already negative by then
_EPS_PIVOT = 1e-9


@dataclass
class RouthResult:
    hurwitz: bool
    routh_table: list[list[float]]
    failure_row: Optional[int] = None
    sign_changes: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def first_column(self) -> list[float]:
        return [row[0] for row in self.routh_table]

    def to_dict(self) -> dict:
        return {
            "hurwitz": self.hurwitz,
            "routh_table": self.routh_table,
            "failure_row": self.failure_row,
            "sign_changes": self.sign_changes,
            "notes": list(self.notes),
        }


def routh_hurwitz(p) -> RouthResult:
    """Build the Routh array of ``p`` and decide strict Hurwitz stability.

    The polynomial is first multiplied by ``-1`` if its leading coefficient
    is negative.  An exactly-zero first-column entry is replaced by a small
    positive epsilon so the table can be completed (the verdict is negative
    regardless); a whole row of zeros signals roots symmetric about the
    origin and is reported as marginal, i.e. not Hurwitz.

    Parameters
    ----------
    p : Poly or sequence of float
        Polynomial of degree at least one.

    Returns
    -------
    RouthResult
        ``failure_row`` is the index of the first row whose leading entry is
        not strictly positive.
    """
    p = as_poly(p)
    if p.is_zero:
        raise ZeroPolynomialError("Routh test of the zero polynomial")
    if p.degree < 1:
        raise ValueError("Routh test needs degree >= 1")
    c = p.positive_lc().coeffs
    n = p.degree
    width = n // 2 + 1
    rows = [np.zeros(width), np.zeros(width)]
    rows[0][: len(c[0::2])] = c[0::2]
    rows[1][: len(c[1::2])] = c[1::2]
    notes: list[str] = []
    failure: Optional[int] = None
    scale = np.max(np.abs(c))

    for i in range(2, n + 1):
        prev2, prev = rows[i - 2], rows[i - 1]
        if np.all(np.abs(prev) <= 0.0):
            # all-zero row: marginal (j-axis or origin-symmetric roots)
            notes.append(f"row {i - 1} vanished; replaced by auxiliary derivative")
            if failure is None:
                failure = i - 1
            aux_deg = n - (i - 2)
            aux = rows[i - 2]
            powers = aux_deg - 2 * np.arange(width)
            deriv = np.where(powers > 0, aux * powers, 0.0)
            rows[i - 1] = prev = deriv
        if prev[0] == 0.0:
            notes.append(f"zero pivot in row {i - 1}; epsilon substituted")
            if failure is None:
                failure = i - 1
            prev = prev.copy()
            prev[0] = _EPS_PIVOT * scale
            rows[i - 1] = prev
        new = np.zeros(width)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            new[:-1] = (prev[0] * prev2[1:] - prev2[0] * prev[1:]) / prev[0]
            if not np.all(np.isfinite(new)):
                # subnormal pivot: use the row times |pivot|, which keeps every sign
                u, v = prev2 / np.max(np.abs(prev2)), prev / np.max(np.abs(prev))
                new[:-1] = np.sign(v[0]) * (v[0] * u[1:] - u[0] * v[1:])
                new /= max(np.max(np.abs(new)), np.finfo(float).tiny)
                notes.append(f"row {i} rescaled to avoid overflow")
        rows.append(new)

    table = [list(map(float, r)) for r in rows[: n + 1]]
    first = np.array([r[0] for r in table])
    if failure is None:
        bad = np.nonzero(first <= 0.0)[0]
        failure = int(bad[0]) if bad.size else None
    signs = np.sign(first[first != 0.0])
    changes = int(np.sum(signs[1:] != signs[:-1])) if signs.size > 1 else 0
    return RouthResult(failure is None, table, failure, changes, notes)


def is_hurwitz(p) -> bool:
    p = as_poly(p)
    if p.degree == 0:
        return False
    return routh_hurwitz(p).hurwitz
