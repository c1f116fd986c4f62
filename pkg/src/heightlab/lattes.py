"""Lattes maps for (E, x, [2]): the dynamical height, orbits, preimages and small-height towers."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .curves.points import CurvePoint, group_law, lift_x
from .curves.quadratic import QuadElt
from .curves.torsion import twist
from .curves.weierstrass import WeierstrassCurve
from .heights.canonical import canonical_height
from .heights.escape import HomogMap, escape_height
from .numeric.arith import InputError, as_fraction, lcm, require_prime
from .numeric.mahler import weil_height_rational
from .numeric.poly import IntPoly
from .numeric.real import RealApprox
from .ramify import RamCert, unramified_certificate

PREPERIODIC = "Preperiodic"
ESCAPING = "Escaping"


@dataclass(frozen=True)
class LattesMap:
    numer: IntPoly
    denom: IntPoly
    source_curve: WeierstrassCurve

    @property
    def degree(self) -> int:
        return max(self.numer.degree, self.denom.degree)

    @property
    def phi(self) -> HomogMap:
        return _homog(self.numer, self.denom)

    @property
    def escape_threshold(self) -> float:
        """B_f: above it the naive height strictly increases along orbits."""
        return self.phi.height_gap + 1

    def __call__(self, x):
        """f(x) for rational x; None stands for the point at infinity."""
        return self.phi(x)

    def __str__(self):
        return f"({self.numer}) / ({self.denom})"


@lru_cache(maxsize=256)
def _homog(numer: IntPoly, denom: IntPoly) -> HomogMap:
    return HomogMap(numer.coeffs, denom.coeffs, 4)


def _sample_check(E: WeierstrassCurve, f: LattesMap, samples: int, seed: int) -> None:
    rng = random.Random(seed)
    done = 0
    tries = 0
    while done < samples:
        tries += 1
        if tries > 50 * samples:
            raise ArithmeticError("could not sample enough points")
        x = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
        if f.denom(x) == 0:
            continue
        P = lift_x(E, x)[0]
        Q = group_law(E, P, P)
        if Q.is_infinity:
            continue
        if Q.x != f(x):
            raise ArithmeticError(f"Lattes map disagrees with doubling at x = {x}")
        done += 1


@lru_cache(maxsize=256)
def lattes_from_curve(E: WeierstrassCurve, samples: int = 100) -> LattesMap:
    """f(x) = (x^4 - 2Ax^2 - 8Bx + A^2) / (4x^3 + 4Ax + 4B), cleared to coprime integer polynomials."""
    A, B = E.A, E.B
    num = [A * A, -8 * B, -2 * A, Fraction(0), Fraction(1)]
    den = [4 * B, 4 * A, Fraction(0), Fraction(4)]
    L = lcm(*(c.denominator for c in num + den))
    ni = [int(c * L) for c in num]
    di = [int(c * L) for c in den]
    g = math.gcd(*ni, *di)
    f = LattesMap(IntPoly(c // g for c in ni), IntPoly(c // g for c in di), E)
    _sample_check(E, f, samples, seed=len(str(E)))
    return f


def lattes_height(f: LattesMap, alpha, eps=1e-12) -> RealApprox:
    """h^_f(alpha) certified to eps; exactly 0 once preperiodicity is certified."""
    if float(eps) <= 0:
        raise InputError("eps must be positive")
    rec = is_preperiodic(f, alpha)
    if rec.status == PREPERIODIC:
        return RealApprox(0, 0)
    return escape_height(f.phi, None if alpha is None else as_fraction(alpha), float(eps)).value


@dataclass(frozen=True)
class OrbitRecord:
    start: object
    orbit: list
    status: str
    tail: int | None = None
    cycle: int | None = None
    height_at_cutoff: RealApprox | None = None

    def to_json(self) -> dict:
        from .numeric.arith import fmt_q

        out = {"start": "inf" if self.start is None else fmt_q(self.start),
               "orbit": ["inf" if v is None else fmt_q(v) for v in self.orbit],
               "status": self.status}
        if self.status == PREPERIODIC:
            out.update(tail=self.tail, cycle=self.cycle)
        else:
            out["height_at_cutoff"] = self.height_at_cutoff.to_json()
        return out


def _naive(x) -> float:
    if x is None:
        return 0.0
    return math.log(max(abs(x.numerator), x.denominator))


def is_preperiodic(f: LattesMap, alpha) -> OrbitRecord:
    """Exact orbit until a value repeats (preperiodic) or the height passes B_f (escaping)."""
    start = None if alpha is None else as_fraction(alpha)
    B = f.escape_threshold
    seen: dict = {}
    orbit: list = []
    cur = start
    while True:
        if cur in seen:
            k = seen[cur]
            return OrbitRecord(start, orbit, PREPERIODIC, tail=k, cycle=len(orbit) - k)
        if _naive(cur) > B:
            orbit.append(cur)
            return OrbitRecord(start, orbit, ESCAPING, height_at_cutoff=weil_height_rational(cur))
        seen[cur] = len(orbit)
        orbit.append(cur)
        cur = f(cur)


def preimage_polynomial(f: LattesMap, beta) -> IntPoly:
    """numer(x) - beta * denom(x) made primitive; its roots are f^-1(beta).

    For beta = None (infinity) the preimages are the poles and denom is
    returned; a degree below 4 flags that case.
    """
    if beta is None:
        return f.denom.primitive()
    beta = as_fraction(beta)
    n, d = beta.numerator, beta.denominator
    return (f.numer * d - f.denom * n).primitive()


def iterate_pair(f: LattesMap, n: int) -> tuple[IntPoly, IntPoly]:
    """(Num_n, Den_n) with f^n = Num_n / Den_n, from the homogeneous iteration."""
    N, D = IntPoly.x(), IntPoly.const(1)
    F, G = f.numer.coeffs, f.denom.coeffs
    F = F + (0,) * (5 - len(F))
    G = G + (0,) * (5 - len(G))
    for _ in range(n):
        Np = [IntPoly.const(1)]
        Dp = [IntPoly.const(1)]
        for _ in range(4):
            Np.append(Np[-1] * N)
            Dp.append(Dp[-1] * D)
        N, D = (sum((Np[i] * Dp[4 - i] * c for i, c in enumerate(F) if c), IntPoly(())),
                sum((Np[i] * Dp[4 - i] * c for i, c in enumerate(G) if c), IntPoly(())))
    return N, D


@dataclass
class Level:
    level: int
    minpoly: IntPoly
    hf_exact: Fraction                  # multiple of h^_f(alpha_0)
    unram_cert: RamCert
    naive_height: float                 # log of the largest coefficient
    note: str = ""
    certificate_poly: IntPoly | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        from .numeric.arith import fmt_q

        return {"level": self.level, "degree": self.minpoly.degree,
                "hf_ratio": fmt_q(self.hf_exact), "unram_cert": self.unram_cert.verdict,
                "naive_height": [repr(self.naive_height), "1e-12"], "note": self.note}


@dataclass
class SmallHeightSequence:
    p: int
    seed_curve: WeierstrassCurve
    seed_point: CurvePoint
    twin_curve: WeierstrassCurve
    lattes: LattesMap
    alpha0: Fraction
    hf_alpha0: RealApprox
    seed_height: RealApprox
    levels: list

    def to_json(self) -> dict:
        from .numeric.arith import fmt_q

        return {"p": self.p, "seed_curve": self.seed_curve.to_record()["a"],
                "seed_point": self.seed_point.to_json(),
                "twin_curve": self.twin_curve.to_record()["a"],
                "alpha0": fmt_q(self.alpha0), "hf_alpha0": self.hf_alpha0.to_json(),
                "seed_height": self.seed_height.to_json(),
                "levels": [lv.to_json() for lv in self.levels]}


def small_height_sequence(p: int, levels: int, seed_curve=(Fraction(-2), Fraction(0)),
                          seed_point=(Fraction(-1), Fraction(1)), eps=1e-10) -> SmallHeightSequence:
    """Tower of preimages of alpha_0 under the Lattes map of a twin with bad reduction at p.

    The seed curve E' (good reduction at p) carries a non-torsion point P_0;
    its twist E = E'_p has additive reduction at p and alpha_0 = p x(P_0) is
    the x-coordinate of the image of P_0 on E.  Level n consists of the roots
    of Num_n - alpha_0 Den_n, and h^_f there is h^_f(alpha_0) / 4^n exactly.
    Each level's field is certified at p on the polynomial with roots alpha/p,
    which generates the same field.
    """
    require_prime(p)
    if p == 2:
        raise InputError("p must be odd")
    if levels < 0:
        raise InputError("levels must be non-negative")
    Es = WeierstrassCurve.short(*seed_curve)
    P0 = CurvePoint(*seed_point)
    if not Es.contains_xy(P0.x, P0.y):
        raise InputError("seed point is not on the seed curve")
    E = twist(Es, p)  # y^2 = x^3 + p^2 A x + p^3 B
    f = lattes_from_curve(E)
    alpha0 = p * P0.x
    hf0 = lattes_height(f, alpha0, eps)
    hE = canonical_height(Es, P0, eps)
    out = []
    for n in range(levels + 1):
        if n == 0:
            g = IntPoly.from_rationals([-alpha0, 1])
        else:
            N, D = iterate_pair(f, n)
            g = (N * alpha0.denominator - D * alpha0.numerator).primitive()
        note = ""
        if g.degree != 4**n:
            note = "degenerate level polynomial; sequence truncated"
            out.append(Level(n, g, Fraction(1, 4**n), RamCert(p, ("poly", g), "Inconclusive"),
                             _log_max_coeff(g), note))
            break
        scaled = g.scale_variable(Fraction(p))  # roots alpha / p
        cert = unramified_certificate(scaled, p)
        if cert.verdict != "Unramified":
            note = "squarefree-mod-p test inconclusive"
        out.append(Level(n, g, Fraction(1, 4**n), cert, _log_max_coeff(g), note, scaled))
    return SmallHeightSequence(p, Es, P0, E, f, alpha0, hf0, hE, out)


def _log_max_coeff(g: IntPoly) -> float:
    m = max(abs(c) for c in g.coeffs)
    return math.log(m) if m > 1 else 0.0


def twist_y(gamma, y) -> QuadElt:
    """gamma sqrt(gamma) y, the y-part of the twist isomorphism."""
    gamma = as_fraction(gamma)
    return gamma * QuadElt.sqrt(gamma) * as_fraction(y)


def hf_ratio_check(seq: SmallHeightSequence) -> bool:
    return all(b.hf_exact / a.hf_exact == Fraction(1, 4) for a, b in zip(seq.levels, seq.levels[1:]))

