"""Neron-Tate canonical height on E(Q) through the escape rate of the doubling map."""

from __future__ import annotations

from functools import lru_cache

from mpmath import mpf

from ..curves.points import CurvePoint, is_rational_torsion, map_point, require_on_curve
from ..curves.weierstrass import Transform, WeierstrassCurve
from ..numeric.arith import InputError
from ..numeric.real import RealApprox
from .escape import EscapeHeight, HomogMap, escape_height


@lru_cache(maxsize=512)
def duplication_map(E: WeierstrassCurve) -> tuple[HomogMap, Transform]:
    """x([2]P) = F(x)/G(x) on an integral model of E, with the transform to that model."""
    Ei, T = E.integral_model()
    b2, b4, b6, b8 = (int(v) for v in (Ei.b2, Ei.b4, Ei.b6, Ei.b8))
    phi = HomogMap((-b8, -2 * b6, -b4, 0, 1), (b6, 2 * b4, b2, 4, 0))
    return phi, T


def canonical_height_detail(E: WeierstrassCurve, P: CurvePoint, eps=1e-12) -> EscapeHeight | None:
    """Escape-rate decomposition of 2 * h^(P), or None for torsion."""
    require_on_curve(E, P)
    if not P.is_rational:
        raise InputError("canonical_height expects a point over Q")
    if P.is_infinity or is_rational_torsion(E, P):
        return None
    phi, T = duplication_map(E)
    return escape_height(phi, map_point(T, P).x, 2 * float(eps))


def canonical_height(E: WeierstrassCurve, P: CurvePoint, eps=1e-12) -> RealApprox:
    """h^(P) = 1/2 lim 4^-n h(x([2]^n P)), certified to ``eps``; exactly 0 on torsion."""
    if float(eps) <= 0:
        raise InputError("eps must be positive")
    det = canonical_height_detail(E, P, eps)
    if det is None:
        return RealApprox(0, 0)
    v = det.value
    return RealApprox(v.value / 2, v.abs_error / 2 + abs(v.value) * mpf(2) ** -200)


def height_difference_bound(E: WeierstrassCurve) -> float:
    """C(E) with |h^(P) - h(x(P))/2| <= C(E) for x measured on E's integral model."""
    phi, _ = duplication_map(E)
    return phi.height_gap / 2
