"""Numerical tolerances shared by every module.

All thresholds live in one frozen record so that certificates can embed
the exact configuration they were produced under.
"""
from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

TOL_FILE_ENV = "SPR_FORGE_TOL_FILE"


@dataclass(frozen=True)
class Tolerances:
    strip: float = 1e-12   # leading-zero stripping, relative to max |coeff|
    pos: float = 1e-9      # positivity witness acceptance, relative
    stab: float = 1e-9     # distance from the imaginary axis treated as marginal
    sign: float = 1e-10    # float sign decisions; closer calls go exact
    res: float = 1e-8      # segment witness residual, relative
    lam: float = 1e-8      # even/odd back-solved lambda agreement
    tan: float = 1e-8      # ellipse tangency residual

    def replace(self, **changes) -> "Tolerances":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Tolerances":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})


@dataclass(frozen=True)
class SynthesisConfig:
    """Knobs for :func:`sprforge.synthesis.synthesize`.

    ``h`` is the monic degree-n polynomial used by the degree lift; ``None``
    means ``(s + 1)**n``.  ``seed_margin`` is the frequency-normalized
    margin a geometric seed needs before it is accepted without consulting
    the LP.
    """

    tol: Tolerances = field(default_factory=Tolerances)
    h: tuple[float, ...] | None = None
    lp_grid_points: int = 64
    lp_grid_range: tuple[float, float] = (1e-3, 1e3)
    lp_max_rounds: int = 40
    lp_margin: float = 1e-9
    seed_margin: float = 1e-6
    halving_budget: int = 60
    workers: int = 1


DEFAULT_TOL = Tolerances()


def load_tolerances(path: str | os.PathLike | None = None) -> Tolerances:
    """Read tolerance overrides from a JSON file.

    With no explicit path the ``SPR_FORGE_TOL_FILE`` environment variable is
    consulted; if neither is set the defaults are returned.
    """
    if path is None:
        path = os.environ.get(TOL_FILE_ENV)
    if not path:
        return Tolerances()
    data = json.loads(Path(path).read_text())
    return Tolerances.from_dict(data)
