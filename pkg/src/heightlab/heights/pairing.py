"""Sums of heights over arithmetic progressions {Q, 2Q, ..., sQ} and the inequalities they satisfy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from ..curves.points import CurvePoint, group_law, is_rational_torsion, require_on_curve, scalar_mul, sub
from ..curves.tate import MULT_SPLIT, reduction_type
from ..curves.weierstrass import WeierstrassCurve
from ..numeric.arith import InputError, ord_p
from ..numeric.real import RealApprox, tolerance
from .canonical import canonical_height
from .local import local_height_arch


class PreconditionError(InputError):
    pass


@dataclass(frozen=True)
class LambdaSet:
    base_point: CurvePoint
    s: int
    points: tuple

    @classmethod
    def build(cls, E: WeierstrassCurve, Q: CurvePoint, s: int) -> "LambdaSet":
        if s < 1:
            raise InputError("s must be at least 1")
        require_on_curve(E, Q)
        pts = [Q]
        while len(pts) < s:
            pts.append(group_law(E, pts[-1], Q))
        if any(P.is_infinity for P in pts) or len(set(pts)) != s:
            raise PreconditionError(f"{Q} has order at most {s}")
        return cls(Q, s, tuple(pts))

    def pairs(self):
        for i, R in enumerate(self.points):
            for k, R2 in enumerate(self.points):
                if i != k:
                    yield i + 1, k + 1, R, R2


def pairing_coefficient(s: int) -> int:
    """2 sum_{i<s} i^2 (s - i)."""
    return 2 * sum(i * i * (s - i) for i in range(1, s))


def pairing_closed_form(s: int) -> Fraction:
    return Fraction(s**4 - s**2, 6)


def pairing_identity(s: int) -> bool:
    return pairing_coefficient(s) == pairing_closed_form(s)


@dataclass(frozen=True)
class PairingSum:
    s: int
    h_Q: RealApprox
    direct: RealApprox | None       # sum of h^(R - R') with each difference computed on the curve
    quadratic: RealApprox           # sum_{i != j} (i - j)^2 h^(Q)
    closed: RealApprox              # (s^4 - s^2)/6 h^(Q)
    identity_ok: bool

    @property
    def agree(self) -> bool:
        vals = [self.quadratic, self.closed] + ([self.direct] if self.direct is not None else [])
        return all(a.close_to(b, mpf("1e-5")) for a in vals for b in vals)


def pairing_sum(E: WeierstrassCurve, Q: CurvePoint, s: int, eps=1e-12, direct: bool = True) -> PairingSum:
    """The pair sum over Lambda_s three ways: differences on the curve, quadraticity, closed form."""
    if s < 1:
        raise InputError("s must be at least 1")
    hQ = canonical_height(E, Q, eps)
    coef = sum((i - k) ** 2 for i in range(1, s + 1) for k in range(1, s + 1) if i != k)
    quad = hQ * coef
    closed = hQ * pairing_closed_form(s)
    tot = None
    if direct:
        lam = LambdaSet.build(E, Q, s)
        cache: dict = {}
        tot = RealApprox(0, 0)
        for _, _, R, R2 in lam.pairs():
            D = sub(E, R, R2)
            key = D.x
            if key not in cache:
                cache[key] = canonical_height(E, D, eps)
            tot = tot + cache[key]
    return PairingSum(s, hQ, tot, quad, closed, pairing_identity(s))


# --- archimedean bound ------------------------------------------------------------

@dataclass(frozen=True)
class CheckRow:
    s: int
    lhs: RealApprox
    rhs: RealApprox
    ok: bool

    def to_json(self) -> dict:
        return {"s": self.s, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "ok": self.ok}


def _log_plus_abs(j: Fraction) -> RealApprox:
    a = abs(j)
    if a <= 1:
        return RealApprox(0, 0)
    v = mpmath.log(a.numerator) - mpmath.log(a.denominator)
    return RealApprox(v, abs(v) * mpf(2) ** (8 - mpmath.mp.prec))


def _rlog_int(n: int) -> RealApprox:
    v = mpmath.log(n)
    return RealApprox(v, abs(v) * mpf(2) ** (8 - mpmath.mp.prec))


def elkies_rhs(s: int, j: Fraction) -> RealApprox:
    """-(s/2) log s - (16/5) s - (1/12) log+|j| s."""
    return (-_rlog_int(s) * Fraction(s, 2) - Fraction(16 * s, 5)
            - _log_plus_abs(j) * Fraction(s, 12))


def elkies_check(E: WeierstrassCurve, lam: LambdaSet, eps=1e-15) -> CheckRow:
    """Sum of archimedean local heights over R != R' in Lambda_s against the lower bound."""
    cache: dict = {}
    lhs = RealApprox(0, 0)
    for _, _, R, R2 in lam.pairs():
        D = sub(E, R, R2)
        if D.is_infinity:
            raise PreconditionError("a pair difference is the origin")
        if D.x not in cache:
            cache[D.x] = local_height_arch(E, D, eps).value
        lhs = lhs + cache[D.x]
    rhs = elkies_rhs(lam.s, E.j)
    return CheckRow(lam.s, lhs, rhs, bool(lhs.value >= rhs.value - tolerance(lhs, rhs)))


# --- s^2 inequality at a split multiplicative prime ------------------------------------

def hoehe_rhs(s: int, p: int, h_j: RealApprox, d: int = 1) -> RealApprox:
    """(log p/(12 d)) s^2 - (h(j)/12 + 16/5) s - (1/2) s log s."""
    lp = _rlog_int(p)
    return (lp * Fraction(s * s, 12 * d) - (h_j * Fraction(1, 12) + Fraction(16, 5)) * s
            - _rlog_int(s) * Fraction(s, 2))


def first_positive_s(p: int, h_j: RealApprox, d: int = 1, s_max: int = 10_000) -> int | None:
    """Smallest s at which hoehe_rhs is certainly positive."""
    for s in range(1, s_max + 1):
        if hoehe_rhs(s, p, h_j, d).certainly_positive():
            return s
    return None


@dataclass(frozen=True)
class HoeheTable:
    p: int
    multiplier: int               # e! * ord_p(j^-1)
    Q: CurvePoint
    h_Q: RealApprox
    rows: list
    first_positive: int | None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def split_multiplier(E: WeierstrassCurve, p: int, e: int = 1) -> int:
    loc = reduction_type(E, p)
    if loc.type != MULT_SPLIT:
        raise PreconditionError(f"reduction at {p} is {loc.type}, not split multiplicative")
    return math.factorial(e) * (-ord_p(E.j, p))


def hoehe1_check(E: WeierstrassCurve, p: int, P: CurvePoint, e: int = 1, s_max: int = 12,
                 eps=1e-12) -> HoeheTable:
    """lhs = pair sum over Lambda_s for Q = e! ord_p(j^-1) P, against the s^2 lower bound (d = 1)."""
    require_on_curve(E, P)
    if P.is_infinity or is_rational_torsion(E, P):
        raise PreconditionError("P must be non-torsion")
    m = split_multiplier(E, p, e)
    Q = scalar_mul(E, m, P)
    hQ = canonical_height(E, Q, eps)
    rows = []
    for s in range(1, s_max + 1):
        lhs = hQ * pairing_closed_form(s)
        rhs = hoehe_rhs(s, p, E.h_j)
        rows.append(CheckRow(s, lhs, rhs, bool(lhs.value >= rhs.value - tolerance(lhs, rhs))))
    return HoeheTable(p, m, Q, hQ, rows, first_positive_s(p, E.h_j))


def lambda_doubling_defect(E: WeierstrassCurve, P: CurvePoint, eps=1e-15) -> RealApprox:
    """lambda(2P) - 4 lambda(P) + log|2y + a1 x + a3| - (1/4) log|Delta|; zero up to error."""
    Q = group_law(E, P, P)
    l1 = local_height_arch(E, P, eps).value
    l2 = local_height_arch(E, Q, eps).value
    t = 2 * P.y + E.a1 * P.x + E.a3
    d = abs(E.disc)
    lt = mpmath.log(abs(t.numerator)) - mpmath.log(t.denominator)
    ld = mpmath.log(d.numerator) - mpmath.log(d.denominator)
    corr = RealApprox(lt - ld / 4, (abs(lt) + abs(ld)) * mpf(2) ** (8 - mpmath.mp.prec))
    return l2 - l1 * 4 + corr
