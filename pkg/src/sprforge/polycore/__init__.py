"""Polynomial arithmetic, Hurwitz tests and Sturm positivity certificates."""
from .poly import Poly, ZeroPolynomialError, as_poly, cauchy_root_bound, eval_at_jomega, poly_arith
from .routh import RouthResult, routh_hurwitz, is_hurwitz
from .sturm import (
    PositivityProof,
    count_real_roots,
    interval_extrema,
    positive_on_halfline,
    positive_on_interval,
    rational_extrema,
    real_roots,
    sturm_chain,
)

__all__ = [
    "Poly", "ZeroPolynomialError", "as_poly", "cauchy_root_bound", "eval_at_jomega",
    "poly_arith", "RouthResult", "routh_hurwitz", "is_hurwitz", "PositivityProof",
    "count_real_roots", "interval_extrema", "positive_on_halfline", "positive_on_interval",
    "rational_extrema", "real_roots", "sturm_chain",
]
