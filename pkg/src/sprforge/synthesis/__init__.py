"""Constructive synthesis of a common strictly positive real numerator."""
from .ellipses import EllipseSpec, PlaneConstraint, build_ellipse, build_ellipses, ellipse_interior_point
from .perturb import (DeltaSelection, EpsilonSelection, default_h, degree_lift, epsilon_select,
                      intermediate_numerator, lift, perturbation_poly)
from .pipeline import SynthesisResult, as_family, closed_form_low_degree, synthesize
from .search import (LPFeasibility, OmegaPoint, certify_point, find_common_point,
                     lp_grid_feasibility, seed_points, weighted_margin)
from .tangency import TangencyLine, intercepts, tangency_line

__all__ = [
    "EllipseSpec", "PlaneConstraint", "build_ellipse", "build_ellipses", "ellipse_interior_point",
    "DeltaSelection", "EpsilonSelection", "default_h", "degree_lift", "epsilon_select",
    "intermediate_numerator", "lift", "perturbation_poly", "SynthesisResult", "as_family",
    "closed_form_low_degree", "synthesize", "LPFeasibility", "OmegaPoint", "certify_point",
    "find_common_point", "lp_grid_feasibility", "seed_points", "weighted_margin",
    "TangencyLine", "intercepts", "tangency_line",
]
