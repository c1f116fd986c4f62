"""Points over Q or a single quadratic field, and the chord-tangent group law."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..numeric.arith import InputError, as_fraction, fmt_q
from .quadratic import QuadElt, field_of
from .weierstrass import Transform, WeierstrassCurve, transform_point, untransform_point


def _coerce(v):
    if isinstance(v, QuadElt):
        return v.a if v.b == 0 else v
    return as_fraction(v)


@dataclass(frozen=True)
class CurvePoint:
    """Affine point (x, y), or the point at infinity when both are None."""

    x: object = None
    y: object = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise InputError("both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", _coerce(self.x))
            object.__setattr__(self, "y", _coerce(self.y))
            field_of(self.x, self.y)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def is_rational(self) -> bool:
        return self.is_infinity or (isinstance(self.x, Fraction) and isinstance(self.y, Fraction))

    @property
    def field(self) -> int:
        return 1 if self.is_infinity else field_of(self.x, self.y)

    @classmethod
    def parse(cls, text: str) -> "CurvePoint":
        text = text.strip().strip("()")
        if text.lower() in ("inf", "infinity", "o"):
            return INFINITY
        parts = text.replace(" ", "").split(",")
        if len(parts) != 2:
            raise InputError(f"expected 'x,y', got {text!r}")
        return cls(as_fraction(parts[0]), as_fraction(parts[1]))

    def __str__(self):
        if self.is_infinity:
            return "O"
        fx = fmt_q(self.x) if isinstance(self.x, Fraction) else str(self.x)
        fy = fmt_q(self.y) if isinstance(self.y, Fraction) else str(self.y)
        return f"({fx}, {fy})"

    def to_json(self):
        if self.is_infinity:
            return "O"
        if self.is_rational:
            return [fmt_q(self.x), fmt_q(self.y)]
        return [str(self.x), str(self.y)]


INFINITY = CurvePoint()


def on_curve(E: WeierstrassCurve, P: CurvePoint) -> bool:
    return P.is_infinity or E.contains_xy(P.x, P.y)


def require_on_curve(E: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    if not on_curve(E, P):
        raise InputError(f"point {P} is not on {E}")
    return P


def neg(E: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y - E.a1 * P.x - E.a3)


def group_law(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    field_of(P.x, P.y, Q.x, Q.y)
    a1, a2, a3, a4, a6 = E.ainvs
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


def sub(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return group_law(E, P, neg(E, Q))


def scalar_mul(E: WeierstrassCurve, m: int, P: CurvePoint) -> CurvePoint:
    if m < 0:
        return scalar_mul(E, -m, neg(E, P))
    out, base = INFINITY, P
    while m:
        if m & 1:
            out = group_law(E, out, base)
        m >>= 1
        if m:
            base = group_law(E, base, base)
    return out


def order_at_most(E: WeierstrassCurve, P: CurvePoint, bound: int) -> int | None:
    """Exact order of P if it is at most ``bound``, else None."""
    Q = P
    for k in range(1, bound + 1):
        if Q.is_infinity:
            return k
        Q = group_law(E, Q, P)
    return None


# Mazur: rational torsion points have order at most 12
MAZUR_BOUND = 12


def is_rational_torsion(E: WeierstrassCurve, P: CurvePoint) -> bool:
    if not P.is_rational:
        raise InputError("Mazur's bound applies to rational points only")
    return order_at_most(E, P, MAZUR_BOUND) is not None


def map_point(T: Transform, P: CurvePoint) -> CurvePoint:
    """Carry a point to the model obtained by ``E.change(T)``."""
    if P.is_infinity:
        return P
    return CurvePoint(*transform_point(T, P.x, P.y))


def unmap_point(T: Transform, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(*untransform_point(T, P.x, P.y))


def lift_x(E: WeierstrassCurve, x) -> list[CurvePoint]:
    """Points with the given x-coordinate; y may land in a quadratic field."""
    x = as_fraction(x)
    b, c = E.rhs_quadratic(x)
    disc = b * b + 4 * c
    root = QuadElt.sqrt(disc)
    ys = [(-b + root) / 2, (-b - root) / 2]
    pts = []
    for y in ys:
        P = CurvePoint(x, y)
        if P not in pts:
            pts.append(P)
    return pts
