"""Effective lower bounds for canonical heights and caps on torsion / preperiodic counts.

Every variant evaluates a closed form in the constant frak_c and records
each intermediate value in a named trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import iv, mpf

from .curves.tate import ADDITIVE, GOOD, MULT_NONSPLIT, MULT_SPLIT, POT_MULT, reduction_type
from .curves.torsion import twist
from .curves.weierstrass import WeierstrassCurve
from .numeric.arith import InputError, PrecisionError, ord_p, require_prime
from .numeric.lambert import positivity_threshold
from .numeric.real import RealApprox, precision, working_precision

ELLIPTIC41 = "Elliptic41"
LATTES42 = "Lattes42"
INFLATED51 = "Inflated51"
GALOIS52 = "Galois52"
ADDITIVE53 = "Additive53"
TOTALLY_REAL25 = "TotallyReal25"
TOTALLY_PADIC26 = "TotallyPadic26"

VARIANTS = {"41": ELLIPTIC41, "42": LATTES42, "51": INFLATED51, "52": GALOIS52,
            "53": ADDITIVE53, "25": TOTALLY_REAL25, "26": TOTALLY_PADIC26}

BOUND_PRECISION = 256
MAX_CEIL_PRECISION = 1 << 12
K_FALLBACK = 48


@dataclass(frozen=True)
class BoundInput:
    h_j: RealApprox
    p: int
    d: int = 1
    e: int = 1
    j_ord: int | None = None        # ord_v(j^-1)
    H_j: int | None = None          # exact multiplicative height max(|num j|, den j)
    f_res: int | None = None
    nu: int | None = None
    k_split: int | None = None

    def __post_init__(self):
        require_prime(self.p)
        if not isinstance(self.h_j, RealApprox):
            object.__setattr__(self, "h_j", RealApprox.exact(Fraction(self.h_j) if isinstance(self.h_j, int)
                                                             else self.h_j))
        if self.h_j.hi < 0:
            raise InputError("h(j) must be non-negative")
        for name in ("d", "e"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be at least 1")
        if self.j_ord is not None and self.j_ord < 1:
            raise InputError("ord_v(j^-1) must be at least 1")
        if self.f_res is not None and self.f_res < 1:
            raise InputError("f must be at least 1")
        if self.nu is not None and self.nu < 0:
            raise InputError("nu must be non-negative")
        if self.k_split is not None and not 1 <= self.k_split <= K_FALLBACK:
            raise InputError("k must lie in [1, 48]")

    @classmethod
    def from_curve(cls, E: WeierstrassCurve, p: int, e: int = 1, d: int = 1, **extra) -> "BoundInput":
        j = E.j
        H = max(abs(j.numerator), j.denominator)
        vj = ord_p(j, p)
        j_ord = -vj if j != 0 and vj < 0 else None
        return cls(h_j=E.h_j, p=p, d=d, e=e, j_ord=j_ord, H_j=H, **extra)

    def to_json(self) -> dict:
        out = {"h_j": self.h_j.to_json(), "p": self.p, "d": self.d, "e": self.e}
        for k in ("j_ord", "H_j", "f_res", "nu", "k_split"):
            if getattr(self, k) is not None:
                out[k] = getattr(self, k)
        return out


@dataclass
class BoundReport:
    variant: str
    frak_c: int | None
    height_bound: RealApprox
    count_cap: RealApprox | None
    hypotheses: bool
    trace: list = field(default_factory=list)

    def get(self, name):
        for k, v in self.trace:
            if k == name:
                return v
        raise KeyError(name)

    def names(self) -> list[str]:
        return [k for k, _ in self.trace]

    def to_json(self) -> dict:
        return {"variant": self.variant, "frak_c": self.frak_c,
                "height_bound": self.height_bound.to_json(),
                "count_cap": None if self.count_cap is None else self.count_cap.to_json(),
                "hypotheses": self.hypotheses,
                "trace": [[k, _jsonable(v)] for k, v in self.trace]}


def _jsonable(v):
    if isinstance(v, RealApprox):
        return v.to_json()
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, bool) or isinstance(v, (int, str)) or v is None:
        return v
    return str(v)


def _ra(x) -> RealApprox:
    return RealApprox(x, abs(x) * mpf(2) ** (12 - mpmath.mp.prec))


# --- frak_c ------------------------------------------------------------------

def _h_interval(h_j, H_j):
    if H_j is not None:
        return iv.log(iv.mpf(H_j)) if H_j > 1 else iv.mpf(0)
    h = h_j if isinstance(h_j, RealApprox) else RealApprox.exact(h_j)
    return iv.mpf([max(mpf(0), h.lo), h.hi])


def frak_c_interval(h_j, d: int, p: int, H_j: int | None = None, prec: int = BOUND_PRECISION):
    """The real number inside the ceiling, as an interval at the given precision."""
    old = iv.prec
    iv.prec = prec
    try:
        lp = iv.log(iv.mpf(p))
        h = _h_interval(h_j, H_j)
        return (10 * d / lp) * (iv.log(6 * d / lp) + h / 6 + iv.mpf(32) / 5)
    finally:
        iv.prec = old


def frak_c(h_j, d: int, p: int, H_j: int | None = None) -> int:
    """ceil((10d/log p)(log(6d/log p) + h(j)/6 + 32/5)), certified."""
    require_prime(p)
    if d < 1:
        raise InputError("d must be at least 1")
    prec = BOUND_PRECISION
    while prec <= MAX_CEIL_PRECISION:
        X = frak_c_interval(h_j, d, p, H_j, prec)
        lo, hi = mpf(X.a), mpf(X.b)
        if mpmath.ceil(lo) == mpmath.ceil(hi) and lo != mpmath.ceil(lo):
            return int(mpmath.ceil(lo))
        if H_j is None and isinstance(h_j, RealApprox) and h_j.abs_error > 0:
            break  # more bits cannot shrink the width of h(j) itself
        prec *= 2
    raise PrecisionError("frak_c: interval straddles an integer")


def frak_c_W(h_j: RealApprox, d: int, p: int) -> RealApprox:
    """Largest root of (log p/(2d)) x - (h(j)/2 + 96/5) - 3 log x, via W_{-1}."""
    a = mpmath.log(p) / (6 * d)
    b = h_j.value / 6 + mpf(32) / 5
    return positivity_threshold(a, b).root


# --- closed forms ----------------------------------------------------------------

def _lower(c, logp, d, mult):
    """((log p)/(2d) c - 3 log 2) / ((8c^3 - 2c) mult^2) and its pieces."""
    num = logp / (2 * d) * c - 3 * mpmath.log(2)
    den = mpf(8 * c**3 - 2 * c) * mpf(mult) ** 2
    return num, den


def _c_prime_scan(h_j, logp, d, mult, c):
    """max over 2 <= s <= 4c of ((log p/(2d)) s - (h/2 + 96/5) - 3 log s) / ((s^3 - s) mult^2)."""
    best, arg = None, None
    for s in range(2, max(4 * c, 2) + 1):
        v = (logp / (2 * d) * s - (h_j / 2 + mpf(96) / 5) - 3 * mpmath.log(s)) / (mpf(s**3 - s) * mpf(mult) ** 2)
        if best is None or v > best:
            best, arg = v, s
    return best, arg


def _need(inp: BoundInput, *names):
    missing = [n for n in names if getattr(inp, n) is None]
    if missing:
        raise InputError(f"missing inputs: {', '.join(missing)}")


def _elliptic(inp: BoundInput, d: int, mult_of_e, label_e, trace, lattes=False):
    logp = mpmath.log(inp.p)
    c = frak_c(inp.h_j, d, inp.p, inp.H_j)
    N = inp.j_ord
    m = mult_of_e * N
    num, den = _lower(c, logp, d, m)
    trace += [("frak_c", c), (label_e, mult_of_e), ("ord_j_inv", N), ("d", d),
              ("numerator", _ra(num)), ("denominator", _ra(den))]
    return c, logp, m, num, den


def bogomolov_bounds(inp: BoundInput, variant: str) -> BoundReport:
    """Evaluate the named variant's height lower bound and count cap."""
    variant = VARIANTS.get(str(variant), variant)
    with precision(max(BOUND_PRECISION, working_precision())):
        if variant in (ELLIPTIC41, LATTES42, INFLATED51):
            return _elliptic_family(inp, variant)
        if variant == GALOIS52:
            return _galois(inp)
        if variant == ADDITIVE53:
            return _additive(inp)
        if variant == TOTALLY_REAL25:
            return _totally_real(inp)
        if variant == TOTALLY_PADIC26:
            return _totally_padic(inp)
    raise InputError(f"unknown variant {variant!r}")


def _elliptic_family(inp: BoundInput, variant: str) -> BoundReport:
    _need(inp, "j_ord")
    trace: list = []
    d = inp.d
    if variant == INFLATED51:
        _need(inp, "k_split")
        d = inp.k_split * inp.d
        trace.append(("k", inp.k_split))
    ef = math.factorial(inp.e)
    c, logp, m, num, den = _elliptic(inp, d, ef, "e_factorial", trace)
    big = ef * c * inp.j_ord
    c_prime = num / den
    scan, s_arg = _c_prime_scan(inp.h_j.value, logp, d, m, c)
    trace += [("C_prime_scan", _ra(scan)), ("C_prime_scan_s", s_arg)]
    if variant == LATTES42:
        height = num / (2 * den)
        cap = Fraction(4, 3) * big**3 + big**2
        cap_proof = Fraction(4, 3) * big**3 + big + 2
        trace += [("c", _ra(height)), ("c_P", cap), ("c_P_proof_line", cap_proof)]
    else:
        height = c_prime
        cap = Fraction(1, 3) * big**3 + Fraction(1, 2) * big**2
        trace += [("c_prime", _ra(height)), ("c_prime_T", cap)]
    return BoundReport(variant, c, _ra(height), RealApprox.exact(cap), bool(num > 0), trace)


def _galois(inp: BoundInput) -> BoundReport:
    _need(inp, "j_ord")
    trace: list = []
    c, logp, m, num, den = _elliptic(inp, inp.d, inp.e, "e", trace)
    height = num / den
    cap = (c * inp.j_ord * inp.e) ** 2
    trace += [("c_prime", _ra(height)), ("c_prime_T", cap)]
    return BoundReport(GALOIS52, c, _ra(height), RealApprox.exact(cap), bool(num > 0), trace)


def _additive(inp: BoundInput) -> BoundReport:
    if inp.e != 1:
        raise InputError("the additive-reduction bound needs e = 1")
    logp = mpmath.log(inp.p)
    c = frak_c(inp.h_j, inp.d, inp.p, inp.H_j)
    c2 = c + 2
    num = logp / (2 * inp.d) * c2 - 3 * mpmath.log(2)
    den = mpf(8 * c2**3 - 2 * c2) * 144
    height = num / den
    cap = (12 * c + 24) ** 2
    trace = [("frak_c", c), ("frak_c_plus_2", c2), ("factor_144", 144), ("d", inp.d),
             ("numerator", _ra(num)), ("denominator", _ra(den)),
             ("c_prime", _ra(height)), ("c_prime_T", cap)]
    return BoundReport(ADDITIVE53, c, _ra(height), RealApprox.exact(cap), bool(num > 0), trace)


def _totally_real(inp: BoundInput) -> BoundReport:
    h = inp.h_j.value
    height = 1 / (108 * (h + 10) ** 5)
    trace = [("h_j", inp.h_j), ("c", _ra(height)), ("c_P", None)]
    return BoundReport(TOTALLY_REAL25, None, _ra(height), None, True, trace)


def padic_M(p: int, e: int, f: int, nu: int) -> int:
    return max(p ** (6 * f) + 1 + 2 * p ** (3 * f), 72 * e * nu)


def _totally_padic(inp: BoundInput) -> BoundReport:
    _need(inp, "f_res", "nu")
    if inp.p == 2:
        raise InputError("p must be odd")
    e, p = inp.e, inp.p
    M = padic_M(p, e, inp.f_res, inp.nu)
    logp = mpmath.log(p)
    L = mpmath.log(6 * e * M) + logp / (3 * e) + inp.h_j.value / 6 + mpf(32) / 5
    height = mpf(25) / 256 * (logp / (6 * e * M)) ** 3 / L**2
    cap = 24 * e * M / (5 * logp) * L + 2
    trace = [("M", M), ("f", inp.f_res), ("nu", inp.nu), ("log_term", _ra(L)),
             ("c", _ra(height)), ("c_P", _ra(cap))]
    return BoundReport(TOTALLY_PADIC26, None, _ra(height), _ra(cap), True, trace)


# --- degree of a split-multiplicative extension ------------------------------------------

def _short(E: WeierstrassCurve) -> WeierstrassCurve:
    return E if E.is_short else E.short_integral_model()[0]


def _nonresidue_unit(p: int) -> int:
    """A unit d at p generating the unramified quadratic extension of Q_p."""
    if p == 2:
        return -3
    d = 2
    while pow(d, (p - 1) // 2, p) != p - 1:
        d += 1
    return d


def default_twist_set(p: int) -> list[int]:
    u = _nonresidue_unit(p)
    out = []
    for g in (-1, p, -p, 2, -2, 2 * p, -2 * p, 3, -3, 3 * p, -3 * p, u * p, -u * p):
        if g not in out:
            out.append(g)
    return out


@dataclass(frozen=True)
class SplitDegree:
    k: int
    route: tuple          # twist factors used, in order
    fallback: bool = False


def k_split_degree(E: WeierstrassCurve, p: int, twists: list[int] | None = None) -> SplitDegree:
    """Degree of an extension found to make the reduction at p split multiplicative."""
    require_prime(p)
    loc = reduction_type(E, p)
    if loc.type == MULT_SPLIT:
        return SplitDegree(1, ())
    if loc.type == MULT_NONSPLIT:
        u = _nonresidue_unit(p)
        return SplitDegree(2, (u,))
    if loc.type == GOOD or loc.potential_type != POT_MULT:
        raise InputError("split degree needs multiplicative or potentially multiplicative reduction")
    Es = _short(E)
    for g in (twists if twists is not None else default_twist_set(p)):
        t = reduction_type(twist(Es, Fraction(g)), p).type
        if t == MULT_SPLIT:
            return SplitDegree(2, (g,))
        if t == MULT_NONSPLIT:
            return SplitDegree(4, (g, _nonresidue_unit(p)))
    return SplitDegree(K_FALLBACK, (), True)


def split_after_twist(E: WeierstrassCurve, p: int, route: tuple) -> bool:
    """Re-classify E after applying the recorded twists; True when split multiplicative."""
    Es = _short(E)
    g = Fraction(1)
    for t in route:
        g *= t
    if g != 1:
        Es = twist(Es, g)
    return reduction_type(Es, p).type == MULT_SPLIT


def bounds_for_curve(E: WeierstrassCurve, p: int, variant: str, e: int = 1, **extra) -> BoundReport:
    """Build the inputs from E at p and evaluate a variant."""
    variant = VARIANTS.get(str(variant), variant)
    loc = reduction_type(E, p)
    if variant in (ELLIPTIC41, LATTES42, GALOIS52) and loc.type != MULT_SPLIT:
        raise InputError(f"{variant} needs split multiplicative reduction at {p}")
    if variant == ADDITIVE53 and loc.type != ADDITIVE:
        raise InputError(f"{variant} needs additive reduction at {p}")
    if variant == INFLATED51 and "k_split" not in extra:
        extra["k_split"] = k_split_degree(E, p).k
    return bogomolov_bounds(BoundInput.from_curve(E, p, e=e, **extra), variant)
