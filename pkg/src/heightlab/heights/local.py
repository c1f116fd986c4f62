"""Local Neron heights and the place-by-place decomposition of the canonical height.

Normalisation: lambda_v(P) = 1/2 log max(1, |x|_v) + O(1) - (1/12) log|Delta|_v,
so that the Delta terms cancel over all places and the sum is the
canonical height with the 1/2 lim 4^-n h(x(2^n P)) convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from ..curves.points import CurvePoint, group_law, scalar_mul
from ..curves.tate import minimal_model_at, singular_points_mod_p
from ..curves.weierstrass import WeierstrassCurve
from ..numeric.arith import InputError, PrecisionError, factor, lcm, ord_p
from ..numeric.poly import q_gcdex
from ..numeric.real import RealApprox, precision, working_precision


class NotInE0Error(InputError):
    """The point does not have nonsingular reduction at the prime."""


@dataclass(frozen=True)
class LocalHeightValue:
    place: object  # a prime, or "inf"
    value: RealApprox
    on_E0: bool = True

    def to_json(self) -> dict:
        return {"place": str(self.place), "value": self.value.to_json(), "on_E0": self.on_E0}


# --- archimedean ------------------------------------------------------------

def _shift_b(b, r):
    b2, b4, b6, b8 = b
    return (b2 + 12 * r,
            b4 + r * b2 + 6 * r * r,
            b6 + 2 * r * b4 + r * r * b2 + 4 * r**3,
            b8 + 3 * r * b6 + 3 * r * r * b4 + r**3 * b2 + 3 * r**4)


def _zw_coeffs(b):
    b2, b4, b6, b8 = b
    z = [Fraction(1), Fraction(0), -b4, -2 * b6, -b8]   # 1 - b4 t^2 - 2 b6 t^3 - b8 t^4
    w = [Fraction(0), Fraction(4), b2, 2 * b4, b6]       # 4t + b2 t^2 + 2 b4 t^3 + b6 t^4
    return z, w


def _chart_log_bound(b) -> float:
    """K with |log|zeta|| <= K whenever |t| <= 2 and zeta is chosen as in the series."""
    z, w = _zw_coeffs(b)
    up = sum(abs(c) * 2**i for i, c in enumerate(z)) + sum(abs(c) * 2**i for i, c in enumerate(w))
    zz = [c for c in z]
    ww = [c for c in w]
    while ww and ww[-1] == 0:
        ww.pop()
    while zz and zz[-1] == 0:
        zz.pop()
    s, t = q_gcdex(zz, ww)
    S = sum(abs(c) * 2**i for i, c in enumerate(s)) + sum(abs(c) * 2**i for i, c in enumerate(t))
    return max(math.log(float(up)), math.log(2 * float(S)))


def archimedean_lambda_prime(E: WeierstrassCurve, x, eps=1e-15, max_prec: int = 4096) -> RealApprox:
    """Real local height without the discriminant term (lambda + log|Delta|/12)."""
    b = (E.b2, E.b4, E.b6, E.b8)
    bs = _shift_b(b, Fraction(-1))  # chart x' = x + 1
    K = max(_chart_log_bound(b), _chart_log_bound(bs))
    N = 1
    while K * 4.0**-N / 6 > float(eps) / 2:
        N += 1
    tail = K * 4.0**-N / 6
    prec = max(working_precision(), 64 + 2 * N)
    while prec <= max_prec:
        with precision(prec):
            bm = [tuple(mpf(c.numerator) / c.denominator for c in bb) for bb in (bs, b)]
            xv = mpf(Fraction(x).numerator) / Fraction(x).denominator
            if abs(xv) < mpf(0.5):
                t, beta = 1 / (xv + 1), 0
            else:
                t, beta = 1 / xv, 1
            mu = -mpmath.log(abs(t)) / 2
            f = mpf(1) / 8
            for _ in range(N):
                b2, b4, b6, b8 = bm[beta]
                t2 = t * t
                z = 1 - b4 * t2 - 2 * b6 * t2 * t - b8 * t2 * t2
                w = 4 * t + b2 * t2 + 2 * b4 * t2 * t + b6 * t2 * t2
                if abs(w) <= 2 * abs(z):
                    mu += f * mpmath.log(abs(z))
                    t = w / z
                else:
                    zw = z + w if beta == 1 else z - w
                    mu += f * mpmath.log(abs(zw))
                    t = w / zw
                    beta = 1 - beta
                f /= 4
            if mpmath.isfinite(mu):
                return RealApprox(mu, mpf(tail) + abs(mu) * mpf(2) ** (16 - prec) * N)
        prec *= 2
    raise PrecisionError("archimedean series did not converge")


def local_height_arch(E: WeierstrassCurve, P: CurvePoint, eps=1e-15) -> LocalHeightValue:
    if P.is_infinity:
        raise InputError("the local height has a pole at O")
    if not P.is_rational:
        raise InputError("real embedding of a non-rational point is not supported")
    lam = archimedean_lambda_prime(E, P.x, eps)
    d = abs(E.disc)
    logd = (mpmath.log(d.numerator) - mpmath.log(d.denominator)) / 12
    return LocalHeightValue("inf", lam - RealApprox(logd, abs(logd) * mpf(2) ** (8 - mpmath.mp.prec)))


# --- non-archimedean ----------------------------------------------------------

def in_E0(E: WeierstrassCurve, P: CurvePoint, p: int) -> bool:
    """Does P have nonsingular reduction on the p-minimal model?"""
    if P.is_infinity:
        return True
    loc = minimal_model_at(E, p)
    Q = _to_minimal(E, P, p)
    if ord_p(Q.x, p) < 0:
        return True
    if loc.ord_min_disc == 0:
        return True
    sing = singular_points_mod_p(loc.minimal_curve, p)
    xr = Q.x.numerator * pow(Q.x.denominator, -1, p) % p
    yr = Q.y.numerator * pow(Q.y.denominator, -1, p) % p
    return (xr, yr) not in sing


def _to_minimal(E: WeierstrassCurve, P: CurvePoint, p: int) -> CurvePoint:
    from ..curves.points import map_point

    return map_point(minimal_model_at(E, p).minimal_transform, P)


def local_height_nonarch_E0(E: WeierstrassCurve, Q: CurvePoint, p: int) -> LocalHeightValue:
    """1/2 max(0, -ord_p x) log p + (1/12) ord_p(Delta_min) log p on the p-minimal model."""
    if Q.is_infinity:
        raise InputError("the local height has a pole at O")
    if not Q.is_rational:
        raise InputError("rational points only")
    if not in_E0(E, Q, p):
        raise NotInE0Error(f"{Q} has singular reduction at {p}")
    loc = minimal_model_at(E, p)
    Qm = _to_minimal(E, Q, p)
    coeff = Fraction(max(0, -ord_p(Qm.x, p)), 2) + Fraction(loc.ord_min_disc, 12)
    L = mpmath.log(p)
    v = L * coeff.numerator / coeff.denominator
    return LocalHeightValue(p, RealApprox(v, abs(v) * mpf(2) ** (8 - mpmath.mp.prec)), True)


# --- decomposition -------------------------------------------------------------

def candidate_bad_primes(E: WeierstrassCurve) -> list[int]:
    """Primes where E's model is non-integral or has p | Delta; all bad primes are among them."""
    ps = set(E.bad_primes())
    for a in E.ainvs:
        ps |= set(factor(a.denominator))
    return sorted(ps)


def relevant_primes(E: WeierstrassCurve, P: CurvePoint) -> list[int]:
    ps = set(candidate_bad_primes(E))
    if not P.is_infinity:
        ps |= set(factor(P.x.denominator))
    return sorted(ps)


def e0_multiplier(E: WeierstrassCurve, P: CurvePoint, cap: int = 48) -> int:
    """Smallest-per-prime multipliers k_p with k_p P in E_0, combined by lcm."""
    N = 1
    for p in candidate_bad_primes(E):
        if minimal_model_at(E, p).ord_min_disc == 0:
            continue
        Q, k = P, 1
        while not in_E0(E, Q, p):
            k += 1
            if k > cap:
                raise ArithmeticError(f"no multiple of {P} up to {cap} lies in E_0 at {p}")
            Q = group_law(E, Q, P)
        N = lcm(N, k)
    return N


@dataclass(frozen=True)
class Decomposition:
    multiplier: int
    point: CurvePoint
    parts: list
    total: RealApprox          # sum of local heights of N P
    height: RealApprox | None  # total / N^2, None when N P = O


def decomposition(E: WeierstrassCurve, P: CurvePoint, eps=1e-15) -> Decomposition:
    """Canonical height of P as (sum over places of lambda_v(N P)) / N^2."""
    N = e0_multiplier(E, P)
    Q = scalar_mul(E, N, P)
    if Q.is_infinity:
        return Decomposition(N, Q, [], RealApprox(0, 0), None)
    parts = [local_height_arch(E, Q, eps)]
    for p in relevant_primes(E, Q):
        parts.append(local_height_nonarch_E0(E, Q, p))
    total = RealApprox(0, 0)
    for part in parts:
        total = total + part.value
    return Decomposition(N, Q, parts, total, total / (N * N))


def decomposition_height(E: WeierstrassCurve, P: CurvePoint, eps=1e-15) -> RealApprox:
    dec = decomposition(E, P, eps)
    return RealApprox(0, 0) if dec.height is None else dec.height
