"""Rational torsion by Lutz-Nagell, quadratic twists, and a naive-height point search."""

from __future__ import annotations

import math
from fractions import Fraction

from ..numeric.arith import InputError, as_fraction, factor
from .points import INFINITY, CurvePoint, group_law, neg, order_at_most, unmap_point
from .quadratic import QuadElt
from .weierstrass import WeierstrassCurve


def _integer_roots(coeffs: list[int]) -> list[int]:
    """Integer roots of an integer polynomial (ascending coefficients)."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    roots = set()
    if coeffs and coeffs[0] == 0:
        roots.add(0)
        k = 0
        while coeffs[k] == 0:
            k += 1
        coeffs = coeffs[k:]
    if len(coeffs) <= 1:
        return sorted(roots)
    c0 = abs(coeffs[0])
    # any root divides the constant term
    divs = [1]
    for q, e in factor(c0).items():
        divs = [d * q**i for d in divs for i in range(e + 1)]
    for d in divs:
        for r in (d, -d):
            if sum(c * r**i for i, c in enumerate(coeffs)) == 0:
                roots.add(r)
    return sorted(roots)


def _lutz_nagell_short(A: int, B: int) -> list[CurvePoint]:
    disc = 4 * A**3 + 27 * B * B
    ys = {0}
    # y^2 | 4A^3 + 27B^2
    sq = 1
    for q, e in factor(disc).items():
        sq *= q ** (e // 2)
    for q_div in _divisors(sq):
        ys.add(q_div)
    E = WeierstrassCurve.short(A, B)
    out = []
    for y in sorted(ys):
        for x in _integer_roots([B - y * y, A, 0, 1]):
            for yy in {y, -y}:
                P = CurvePoint(x, yy)
                if order_at_most(E, P, 12) is not None and P not in out:
                    out.append(P)
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factor(n).items():
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return divs


def rational_torsion(E: WeierstrassCurve) -> list[CurvePoint]:
    """All rational torsion points of E (Infinity first), in E's own coordinates."""
    Es, T = E.short_integral_model()
    pts = _lutz_nagell_short(int(Es.a4), int(Es.a6))
    return [INFINITY] + [unmap_point(T, P) for P in pts]


def twist(E: WeierstrassCurve, gamma) -> WeierstrassCurve:
    """E_gamma: y^2 = x^3 + gamma^2 A x + gamma^3 B."""
    gamma = as_fraction(gamma)
    if gamma == 0:
        raise InputError("gamma must be nonzero")
    return WeierstrassCurve.short(gamma**2 * E.A, gamma**3 * E.B)


def twist_x(gamma, x) -> Fraction:
    return as_fraction(gamma) * as_fraction(x)


def twist_point(gamma, P: CurvePoint) -> CurvePoint:
    """(x, y) -> (gamma x, gamma sqrt(gamma) y); y may leave Q."""
    if P.is_infinity:
        return P
    gamma = as_fraction(gamma)
    root = QuadElt.sqrt(gamma)
    return CurvePoint(gamma * P.x, gamma * root * P.y)


def rational_point_search(E: WeierstrassCurve, H_max: float, limit: int | None = None) -> list[CurvePoint]:
    """Affine rational points whose x on the short integral model has height <= H_max.

    Enumerates x = n/d^2 with max(|n|, d^2) <= exp(H_max); points are
    returned in E's own coordinates.
    """
    if H_max < 0:
        raise InputError("H_max must be non-negative")
    Es, T = E.short_integral_model()
    A, B = int(Es.a4), int(Es.a6)
    bound = math.floor(math.exp(H_max) * (1 + 1e-12))
    out: list[CurvePoint] = []
    d = 1
    while d * d <= bound:
        d2 = d * d
        d4, d6 = d2 * d2, d2 * d2 * d2
        for n in range(-bound, bound + 1):
            if math.gcd(n, d) != 1:
                continue
            v = n * n * n + A * n * d4 + B * d6
            if v < 0:
                continue
            m = math.isqrt(v)
            if m * m != v:
                continue
            x = Fraction(n, d2)
            y = Fraction(m, d2 * d)
            for yy in ((y, -y) if y else (y,)):
                out.append(unmap_point(T, CurvePoint(x, yy)))
                if limit is not None and len(out) >= limit:
                    return out
        d += 1
    return out


def torsion_closed(E: WeierstrassCurve, pts: list[CurvePoint]) -> bool:
    s = set(pts)
    return all(group_law(E, P, Q) in s for P in pts for Q in pts) and all(neg(E, P) in s for P in pts)
