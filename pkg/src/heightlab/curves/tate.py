"""Per-prime minimal models and reduction types (Tate's algorithm), with a point-count oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..numeric.arith import INF, InputError, ord_p, require_prime
from ..numeric.poly import fp_derivative, fp_gcd, fp_trim
from .weierstrass import IDENTITY, Transform, WeierstrassCurve, compose

GOOD = "Good"
MULT_SPLIT = "MultSplit"
MULT_NONSPLIT = "MultNonsplit"
ADDITIVE = "Additive"
POT_GOOD = "PotGood"
POT_MULT = "PotMult"

# split/nonsplit by counting points up to this prime, by a Legendre symbol beyond
POINT_COUNT_LIMIT = 10_000


@dataclass(frozen=True)
class LocalReduction:
    p: int
    minimal_transform: Transform
    minimal_curve: WeierstrassCurve
    ord_min_disc: int
    type: str
    potential_type: str
    component_index_N: int | None
    kodaira: str

    @property
    def is_multiplicative(self) -> bool:
        return self.type in (MULT_SPLIT, MULT_NONSPLIT)

    def to_json(self) -> dict:
        from ..numeric.arith import fmt_q

        return {
            "p": self.p,
            "type": self.type,
            "potential_type": self.potential_type,
            "ord_min_disc": self.ord_min_disc,
            "component_index_N": self.component_index_N,
            "kodaira": self.kodaira,
            "minimal_transform": [fmt_q(v) for v in self.minimal_transform],
            "minimal_model": [fmt_q(a) for a in self.minimal_curve.ainvs],
        }


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _val(x: Fraction, p: int):
    return ord_p(x, p)


def _int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError("expected an integral coefficient")
    return x.numerator


def _tangent_split(E: WeierstrassCurve, p: int) -> bool:
    """Node at (0,0) mod p: do the tangent slopes T^2 + a1 T - a2 split over F_p?"""
    a1, a2 = _int(E.a1), _int(E.a2)
    if p == 2:
        return a2 % 2 == 0  # a1 is odd here, T^2 + T + a2
    return legendre(a1 * a1 + 4 * a2, p) == 1


def _tate_loop(E: WeierstrassCurve, p: int):
    """Tate's algorithm: (minimal model, transform, Kodaira symbol, model with the node at (0,0) or None)."""
    T = IDENTITY
    if not E.is_integral():
        # work on a globally integral model; scaling away from p is harmless
        T = E.integral_transform()
        E = E.change(T)
    inv = lambda z: pow(z % p, -1, p)  # noqa: E731

    while True:
        vD = _val(E.disc, p)
        if vD == 0:
            return E, T, "I0", None
        a1, a2, a3, a4, a6 = (_int(a) for a in E.ainvs)
        b2, b4, b6 = (_int(b) for b in (E.b2, E.b4, E.b6))
        c4, c6 = _int(E.c4), _int(E.c6)
        # move the singular point to (0, 0)
        if p == 2:
            if b2 % 2 == 0:
                r = a4 % 2
                t = (r * (1 + a2 + a4) + a6) % 2
            else:
                r = a3 % 2
                t = (a4 + r) % 2
        elif p == 3:
            r = (-b6) % 3 if b2 % 3 == 0 else (-inv(b2) * b4) % 3
            t = (a1 * r + a3) % 3
        else:
            r = (-inv(12) * b2) % p if c4 % p == 0 else (-inv(12 * c4) * (c6 + b2 * c4)) % p
            t = (-inv(2) * (a1 * r + a3)) % p
        step = (Fraction(1), Fraction(r), Fraction(0), Fraction(t))
        E, T = E.change(step), compose(T, step)
        a1, a2, a3, a4, a6 = (_int(a) for a in E.ainvs)
        b2, b6, b8 = _int(E.b2), _int(E.b6), _int(E.b8)
        if b2 % p:
            return E, T, f"I{vD}", E
        if _val(Fraction(a6), p) < 2:
            return E, T, "II", None
        if _val(Fraction(b8), p) < 3:
            return E, T, "III", None
        if _val(Fraction(b6), p) < 3:
            return E, T, "IV", None
        # arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s = a2 % 2
            t = 2 * ((a6 // 4) % 2)
        elif p == 3:
            s, t = a1, a3
        else:
            s = (-a1 * inv(2)) % p
            t = (-a3 * inv(2)) % p
        step = (Fraction(1), Fraction(0), Fraction(s), Fraction(t))
        E, T = E.change(step), compose(T, step)
        a1, a2, a3, a4, a6 = (_int(a) for a in E.ainvs)
        b, c, d = a2 // p, a4 // p**2, a6 // p**3
        w = 27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3
        x = 3 * c - b * b
        if w % p:
            return E, T, "I0*", None
        if x % p:
            return E, T, "In*", None
        # triple root: move it to T = 0
        if p == 2:
            r = b % 2
        elif p == 3:
            r = (-d) % 3
        else:
            r = (-b * inv(3)) % p
        step = (Fraction(1), Fraction(p * r), Fraction(0), Fraction(0))
        E, T = E.change(step), compose(T, step)
        a1, a2, a3, a4, a6 = (_int(a) for a in E.ainvs)
        a3t, a6t = a3 // p**2, a6 // p**4
        if (a3t * a3t + 4 * a6t) % p:
            return E, T, "IV*", None
        if p == 2:
            t = -(p**2) * (a6t % 2)
        else:
            t = p**2 * ((-a3t * inv(2)) % p)
        step = (Fraction(1), Fraction(0), Fraction(0), Fraction(t))
        E, T = E.change(step), compose(T, step)
        if _val(E.a4, p) < 4:
            return E, T, "III*", None
        if _val(E.a6, p) < 6:
            return E, T, "II*", None
        # not minimal: scale down by p
        step = (Fraction(p), Fraction(0), Fraction(0), Fraction(0))
        E, T = E.change(step), compose(T, step)


@lru_cache(maxsize=2048)
def minimal_model_at(E: WeierstrassCurve, p: int) -> LocalReduction:
    """p-minimal model, reduction type and component data at p."""
    require_prime(p)
    Emin, T, kod, nodal = _tate_loop(E, p)
    vD = ord_p(Emin.disc, p)
    vj = ord_p(E.j, p)
    pot = POT_MULT if vj != INF and vj < 0 else POT_GOOD
    N = None
    if vD == 0:
        typ = GOOD
    elif nodal is not None:
        if p <= POINT_COUNT_LIMIT:
            ns = count_nonsingular_points(Emin, p)
            split = ns == p - 1
        else:
            split = _tangent_split(nodal, p)
        typ = MULT_SPLIT if split else MULT_NONSPLIT
        N = -vj
    else:
        typ = ADDITIVE
    return LocalReduction(p=p, minimal_transform=T, minimal_curve=Emin, ord_min_disc=vD,
                          type=typ, potential_type=pot, component_index_N=N, kodaira=kod)


def reduction_type(E: WeierstrassCurve, p: int) -> LocalReduction:
    return minimal_model_at(E, p)


def tangent_split(E: WeierstrassCurve, p: int) -> bool | None:
    """Splitness from the tangent-slope discriminant; None unless reduction is multiplicative."""
    Emin, _, _, nodal = _tate_loop(E, p)
    if nodal is None or ord_p(Emin.disc, p) == 0:
        return None
    return _tangent_split(nodal, p)


# --- point-count oracle -----------------------------------------------------

def _reduce(E: WeierstrassCurve, p: int) -> tuple[int, ...]:
    if not E.is_integral(p):
        raise InputError("model is not integral at p")
    return tuple(int(a.numerator * pow(a.denominator, -1, p)) % p for a in E.ainvs)


def singular_points_mod_p(E: WeierstrassCurve, p: int) -> list[tuple[int, int]]:
    """Affine singular points of the reduction of an integral model."""
    a1, a2, a3, a4, a6 = _reduce(E, p)
    if p == 2:
        out = []
        for x in range(2):
            for y in range(2):
                f = (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2
                fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % 2
                fy = (2 * y + a1 * x + a3) % 2
                if f == fx == fy == 0:
                    out.append((x, y))
        return out
    # complete the square: (2y + a1 x + a3)^2 = D(x)
    b2, b4, b6 = (a1 * a1 + 4 * a2) % p, (2 * a4 + a1 * a3) % p, (a3 * a3 + 4 * a6) % p
    D = fp_trim([b6, 2 * b4 % p, b2, 4 % p])
    g = fp_gcd(D, fp_derivative(D, p), p)
    if len(g) <= 1:
        return []
    # repeated roots of D are the singular x-coordinates
    pts = []
    for x in range(p):
        if (g[0] + sum(c * pow(x, i, p) for i, c in enumerate(g) if i)) % p == 0:
            y = (-(a1 * x + a3) * pow(2, -1, p)) % p
            pts.append((x, y))
    return pts


def count_affine_points(E: WeierstrassCurve, p: int) -> int:
    a1, a2, a3, a4, a6 = _reduce(E, p)
    if p == 2:
        return sum(1 for x in range(2) for y in range(2)
                   if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0)
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    total = 0
    for x in range(p):
        total += 1 + legendre(4 * x**3 + b2 * x * x + 2 * b4 * x + b6, p)
    return total


def count_nonsingular_points(E: WeierstrassCurve, p: int) -> int:
    """#E_ns(F_p) for an integral model, counting the point at infinity."""
    return count_affine_points(E, p) + 1 - len(singular_points_mod_p(E, p))


def classify_by_count(E: WeierstrassCurve, p: int) -> str:
    """Reduction type of a p-minimal integral model from singularities and point counts."""
    sing = singular_points_mod_p(E, p)
    if not sing:
        return GOOD
    ns = count_affine_points(E, p) + 1 - len(sing)
    if ns == p - 1:
        return MULT_SPLIT
    if ns == p + 1:
        return MULT_NONSPLIT
    if ns == p:
        return ADDITIVE
    raise ArithmeticError(f"unexpected count {ns} of nonsingular points mod {p}")
