"""The acceptance suite: twelve end-to-end criteria, each returning a pass/fail record."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .bounds import (ADDITIVE53, ELLIPTIC41, GALOIS52, LATTES42, TOTALLY_PADIC26, BoundInput,
                     bogomolov_bounds, bounds_for_curve, frak_c)
from .corpus import corpus_curves, corpus_pairs
from .curves.points import CurvePoint, is_rational_torsion, scalar_mul
from .curves.tate import (MULT_NONSPLIT, MULT_SPLIT, classify_by_count, count_nonsingular_points,
                          minimal_model_at, reduction_type, tangent_split)
from .curves.torsion import rational_point_search, rational_torsion
from .curves.weierstrass import WeierstrassCurve
from .heights.canonical import canonical_height
from .heights.local import decomposition, local_height_nonarch_E0
from .heights.pairing import (LambdaSet, elkies_check, hoehe1_check, pairing_identity, pairing_sum,
                              split_multiplier)
from .lattes import lattes_from_curve, lattes_height, small_height_sequence
from .numeric.arith import ord_p
from .numeric.lambert import lambert_w, positivity_threshold
from .numeric.mahler import height_from_minpoly
from .numeric.poly import IntPoly
from .numeric.real import RealApprox
from .ramify import construct_unramified_point

# split multiplicative witnesses with rational points of infinite order
SPLIT_CURVES = [("0,1,1,-2,0", 389), ("0,1,1,-7,5", 7)]
LATTES_CURVES = ["0,0,0,-2,0", "0,0,0,-16,16", "0,0,0,0,-2", "0,0,0,0,17"]
CONSTRUCTOR_CASES = [("0,1", 5), ("25,5", 5), ("2,7", 7), ("0,1", 2), ("1,7", 7), ("4,7", 7)]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


def _nontorsion_points(E: WeierstrassCurve, H: float, limit: int | None = None) -> list[CurvePoint]:
    pts = [P for P in rational_point_search(E, H) if not is_rational_torsion(E, P)]
    return pts if limit is None else pts[:limit]


def _f(x) -> float:
    return float(x.value) if isinstance(x, RealApprox) else float(x)


# --- 1 ----------------------------------------------------------------------------------

def criterion_1(seed: int = 0) -> CriterionResult:
    worst = 0.0
    for n in range(1, 11):
        h = height_from_minpoly(IntPoly((-2,) + (0,) * (n - 1) + (1,)), 1e-12)
        worst = max(worst, abs(_f(h) - math.log(2) / n))
    return CriterionResult(1, "heights of 2^(1/n)", worst <= 1e-9, {"max_error": worst})


# --- 2 ----------------------------------------------------------------------------------

def criterion_2(seed: int = 0, trials: int = 10_000) -> CriterionResult:
    w = lambert_w(-1, -mpmath.exp(-1))
    w_ok = abs(w.value + 1) <= mpf("1e-9")
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        a = rng.uniform(1e-3, 10.0)
        b = a + rng.expovariate(0.1)
        t = positivity_threshold(a, b)
        root = t.root.value
        x = root + mpf("1e-6") + mpf("1e-6") * root
        if not (t.lower < t.root.lo and t.root.hi < t.upper and t.r(x) > 0):
            bad += 1
    return CriterionResult(2, "Lambert W brackets", bool(w_ok and bad == 0),
                           {"W(-1/e)+1": float(w.value + 1), "trials": trials, "failures": bad})


# --- 3 ----------------------------------------------------------------------------------

def criterion_3(seed: int = 0) -> CriterionResult:
    worst, count, curves = 0.0, 0, 0
    for text in LATTES_CURVES:
        E = WeierstrassCurve.parse(text)
        f = lattes_from_curve(E)
        pts = _nontorsion_points(E, 5, limit=6)
        if pts:
            curves += 1
        for P in pts:
            diff = lattes_height(f, P.x, 1e-10) - canonical_height(E, P, 1e-10) * 2
            worst = max(worst, abs(_f(diff)))
            count += 1
    ok = worst <= 1e-6 and count >= 20 and curves >= 3
    return CriterionResult(3, "Lattes height equals twice the canonical height", ok,
                           {"points": count, "curves": curves, "max_error": worst})


# --- 4 ----------------------------------------------------------------------------------

def criterion_4(seed: int = 0, n_points: int = 50) -> CriterionResult:
    rng = random.Random(seed)
    pool = []
    for E in corpus_curves("rank_positive"):
        pool += [(E, P) for P in _nontorsion_points(E, 4)]
    sample = rng.sample(pool, min(n_points, len(pool)))
    worst = 0.0
    for E, P in sample:
        h1 = canonical_height(E, P, 1e-10)
        for m in range(2, 9):
            hm = canonical_height(E, scalar_mul(E, m, P), 1e-10)
            worst = max(worst, abs(_f(hm - h1 * (m * m))))
    return CriterionResult(4, "quadraticity of the canonical height", worst <= 1e-6 and len(sample) >= 50,
                           {"points": len(sample), "max_error": worst})


# --- 5 ----------------------------------------------------------------------------------

def criterion_5(seed: int = 0) -> CriterionResult:
    exact = all(pairing_identity(s) for s in range(1, 31))
    E = WeierstrassCurve.parse("0,0,1,-1,0")
    Q = CurvePoint(0, 0)
    worst = 0.0
    for s in range(1, 13):
        ps = pairing_sum(E, Q, s, 1e-12)
        worst = max(worst, abs(_f(ps.direct - ps.closed)), abs(_f(ps.quadratic - ps.closed)))
    return CriterionResult(5, "pair sum identity over arithmetic progressions", exact and worst <= 1e-5,
                           {"integer_identity": exact, "max_error": worst})


# --- 6 ----------------------------------------------------------------------------------

def criterion_6(seed: int = 0) -> CriterionResult:
    detail = {}
    ok = True
    for text, p in SPLIT_CURVES:
        E = WeierstrassCurve.parse(text)
        P = _nontorsion_points(E, 4)[0]
        c = frak_c(E.h_j, 1, p)
        s_max = min(2 * c, 50)
        tab = hoehe1_check(E, p, P, 1, s_max)
        Q = scalar_mul(E, split_multiplier(E, p), P)
        elk = [elkies_check(E, LambdaSet.build(E, Q, s)) for s in range(1, 11)]
        this = tab.ok and all(r.ok for r in elk)
        ok = ok and this
        detail[f"{text}@{p}"] = {"s_max": s_max, "hoehe_ok": tab.ok,
                                 "elkies_ok": all(r.ok for r in elk), "first_positive_s": tab.first_positive,
                                 "frak_c": c}
    return CriterionResult(6, "inequality chain at split multiplicative primes", ok, detail)


# --- 7 ----------------------------------------------------------------------------------

def criterion_7(seed: int = 0) -> CriterionResult:
    text, p = SPLIT_CURVES[0]
    E = WeierstrassCurve.parse(text)
    loc = reduction_type(E, p)
    split_by_count = count_nonsingular_points(loc.minimal_curve, p) == p - 1
    rep = bounds_for_curve(E, p, ELLIPTIC41)
    c_prime = rep.get("c_prime")
    heights = [canonical_height(E, P, 1e-10) for P in _nontorsion_points(E, 8)]
    hmin = min(heights, key=lambda h: h.value)
    tors = len(rational_torsion(E))
    cap = rep.get("c_prime_T")
    ok = (split_by_count and c_prime.certainly_positive() and c_prime.hi <= hmin.lo and tors < cap)
    return CriterionResult(7, "height and torsion bounds on a split curve", bool(ok),
                           {"curve": text, "p": p, "split_by_count": split_by_count,
                            "c_prime": _f(c_prime), "min_height": _f(hmin), "points": len(heights),
                            "torsion": tors, "c_prime_T": float(cap)})


# --- 8 ----------------------------------------------------------------------------------

def criterion_8(seed: int = 0) -> CriterionResult:
    ok = True
    detail = {}
    for text, p in SPLIT_CURVES:
        E = WeierstrassCurve.parse(text)
        N = -ord_p(E.j, p)
        for P in _nontorsion_points(E, 4, limit=3):
            Q = scalar_mul(E, N, P)
            lam = local_height_nonarch_E0(E, Q, p).value
            bound = mpf(N) * mpmath.log(p) / 12
            dec = decomposition(E, P, 1e-14)
            gap = abs(_f(dec.height - canonical_height(E, P, 1e-12)))
            this = lam.value >= bound - mpf("1e-12") and gap <= 1e-5
            ok = ok and this
            detail[f"{text}@{p} {P}"] = {"lambda_p": _f(lam), "bound": float(bound), "decomposition_gap": gap}
    return CriterionResult(8, "local height at the split prime and the decomposition", ok, detail)


# --- 9 ----------------------------------------------------------------------------------

def criterion_9(seed: int = 0) -> CriterionResult:
    pairs = corpus_pairs()
    mismatches = []
    for E, exp in pairs:
        p = exp["p"]
        loc = reduction_type(E, p)
        counted = classify_by_count(minimal_model_at(E, p).minimal_curve, p)
        good = loc.type == exp["type"] == counted
        if loc.type in (MULT_SPLIT, MULT_NONSPLIT):
            good = good and tangent_split(E, p) == (loc.type == MULT_SPLIT)
            good = good and loc.component_index_N == -ord_p(E.j, p) == loc.ord_min_disc == exp["N"]
        if not good:
            mismatches.append(f"{E.ainvs_str()}@{p}")
    ok = not mismatches and len(pairs) >= 50
    return CriterionResult(9, "reduction types against point counts", ok,
                           {"pairs": len(pairs), "mismatches": mismatches})


# --- 10 ---------------------------------------------------------------------------------

def criterion_10(seed: int = 0) -> CriterionResult:
    cases = {}
    ok = True
    seen = set()
    for text, p in CONSTRUCTOR_CASES:
        E = WeierstrassCurve.parse(text)
        R = construct_unramified_point(E, p)
        seen.add(R.case)
        this = R.nontorsion and R.unramified
        ok = ok and this
        cases[f"{text}@{p}"] = {"case": R.case, "n": R.n, "x": str(R.x), "y_poly": str(R.y_poly),
                                "verdicts": [c.verdict for c in R.certificates]}
    ok = ok and seen >= {"v(B)=0", "v(A)=0,v(B)>0", "v(A),v(B)>0", "p=2"}
    return CriterionResult(10, "points over fields unramified at p", ok, cases)


# --- 11 ---------------------------------------------------------------------------------

def criterion_11(seed: int = 0, p: int = 5, levels: int = 5) -> CriterionResult:
    seq = small_height_sequence(p, levels)
    lv = seq.levels
    ratios = all(b.hf_exact / a.hf_exact == Fraction(1, 4) for a, b in zip(lv, lv[1:]))
    certs = [x.unram_cert.verdict for x in lv]
    consistent = all(x.unram_cert.unramified or x.note for x in lv)
    first3 = all(x.unram_cert.unramified for x in lv[:3])
    base = seq.hf_alpha0 - seq.seed_height * 2
    ok = ratios and consistent and first3 and len(lv) == levels + 1 and abs(_f(base)) <= 1e-6
    return CriterionResult(11, "small-height tower above a twist with bad reduction", ok,
                           {"levels": len(lv), "certificates": certs, "level0_gap": _f(base)})


# --- 12 ---------------------------------------------------------------------------------

def criterion_12(seed: int = 0) -> CriterionResult:
    rng = random.Random(seed)
    halves = True
    galois = True
    for _ in range(20):
        p = rng.choice([2, 3, 5, 7, 11, 13, 37, 389])
        h = RealApprox(mpmath.log(p) * rng.randint(1, 8), 0)
        e, N = rng.randint(1, 5), rng.randint(1, 6)
        inp = BoundInput(h, p, e=e, j_ord=N)
        a = bogomolov_bounds(inp, ELLIPTIC41).height_bound.value
        b = bogomolov_bounds(inp, LATTES42).height_bound.value
        halves = halves and a == mpmath.ldexp(b, 1)
        g = bogomolov_bounds(inp, GALOIS52).height_bound.value
        subst = bogomolov_bounds(BoundInput(h, p, e=1, j_ord=e * N), ELLIPTIC41).height_bound.value
        galois = galois and g == subst
    add = bogomolov_bounds(BoundInput(RealApprox(mpmath.log(7) * 2, 0), 7), ADDITIVE53)
    add_ok = add.get("frak_c_plus_2") == add.frak_c + 2 and add.get("factor_144") == 144
    M = bogomolov_bounds(BoundInput(RealApprox(0, 0), 3, f_res=1, nu=0), TOTALLY_PADIC26).get("M")
    ok = halves and galois and add_ok and M == 784
    return CriterionResult(12, "bounds engine identities", ok,
                           {"lattes_half": halves, "galois_substitution": galois, "additive_trace": add_ok, "M": M})


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
            11: criterion_11, 12: criterion_12}

SUITES = {"numeric": [1, 2], "curves": [9], "heights": [4, 5, 6, 7, 8], "lattes": [3, 11],
          "ramify": [10], "bounds": [12]}
SUITES["all"] = sorted(CRITERIA)


def run_criterion(n: int, seed: int = 0) -> CriterionResult:
    t = time.perf_counter()
    try:
        res = CRITERIA[n](seed=seed)
    except Exception as exc:  # a crash is a failure, recorded with its message
        res = CriterionResult(n, CRITERIA[n].__name__, False, {"error": f"{type(exc).__name__}: {exc}"})
    res.seconds = time.perf_counter() - t
    return res


def run_suite(name: str = "all", seed: int = 0) -> list[CriterionResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return [run_criterion(n, seed) for n in SUITES[name]]
