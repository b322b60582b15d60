"""Segment stability and common strictly positive real numerators.

Given monic Hurwitz polynomials ``a`` and ``b`` of equal degree, decide
whether every ``lambda*b + (1-lambda)*a`` is Hurwitz and, when it is,
construct ``c`` with ``c/a`` and ``c/b`` both strictly positive real.
Every verdict comes with a certificate that can be re-checked.
"""
__version__ = "0.1.0"

from .config import DEFAULT_TOL, SynthesisConfig, Tolerances, load_tolerances
from .errors import (ConsistencyAlarm, DegenerateConicError, NotHurwitzError, PreconditionError,
                     SearchExhausted, SegmentUnstable, SprForgeError)
from .polycore import Poly, positive_on_halfline, routh_hurwitz, is_hurwitz
from .segstab import SegmentFamily, SegmentVerdict, lambda_routh_positivity, segment_hurwitz
from .sprcheck import (SprCertificate, check_property1, cl_coefficients, is_spr, re_positive,
                       real_part_numerator)
from .synthesis import SynthesisResult, synthesize
from .discrete import (DiscretePoly, bilinear_to_continuous, continuous_to_discrete, discrete_spr,
                       schur_check, synthesize_discrete)

__all__ = [
    "__version__", "DEFAULT_TOL", "SynthesisConfig", "Tolerances", "load_tolerances",
    "ConsistencyAlarm", "DegenerateConicError", "NotHurwitzError", "PreconditionError",
    "SearchExhausted", "SegmentUnstable", "SprForgeError", "Poly", "positive_on_halfline",
    "routh_hurwitz", "is_hurwitz", "SegmentFamily", "SegmentVerdict", "lambda_routh_positivity",
    "segment_hurwitz", "SprCertificate", "check_property1", "cl_coefficients", "is_spr",
    "re_positive", "real_part_numerator", "SynthesisResult", "synthesize", "DiscretePoly",
    "bilinear_to_continuous", "continuous_to_discrete", "discrete_spr", "schur_check",
    "synthesize_discrete",
]
