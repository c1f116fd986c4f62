"""Weierstrass curves over Q, the group law, reduction types and torsion."""

from .divpoly import division_polynomial, nontorsion_certificate, torsion_polynomial
from .points import (CurvePoint, group_law, is_rational_torsion, lift_x, map_point, neg, on_curve,
                     require_on_curve, scalar_mul, sub)
from .quadratic import MixedFieldError, QuadElt
from .tate import (ADDITIVE, GOOD, MULT_NONSPLIT, MULT_SPLIT, LocalReduction, classify_by_count,
                   count_nonsingular_points, minimal_model_at, reduction_type, tangent_split)
from .torsion import rational_point_search, rational_torsion, twist
from .weierstrass import WeierstrassCurve

__all__ = [
    "division_polynomial", "nontorsion_certificate", "torsion_polynomial", "CurvePoint",
    "group_law", "is_rational_torsion", "lift_x", "map_point", "neg", "on_curve",
    "require_on_curve", "scalar_mul", "sub", "MixedFieldError", "QuadElt", "ADDITIVE", "GOOD",
    "MULT_NONSPLIT", "MULT_SPLIT", "LocalReduction", "classify_by_count",
    "count_nonsingular_points", "minimal_model_at", "reduction_type", "tangent_split",
    "rational_point_search", "rational_torsion", "twist", "WeierstrassCurve",
]
