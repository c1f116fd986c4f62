from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from heightlab.corpus import corpus_pairs, load_corpus
from heightlab.curves import (ADDITIVE, GOOD, MULT_NONSPLIT, MULT_SPLIT, CurvePoint, MixedFieldError,
                              QuadElt, classify_by_count, count_nonsingular_points, division_polynomial,
                              group_law, map_point, minimal_model_at, neg, on_curve, rational_point_search,
                              rational_torsion, reduction_type, scalar_mul, tangent_split, twist)
from heightlab.curves.divpoly import torsion_polynomial
from heightlab.curves.torsion import torsion_closed, twist_point, twist_x
from heightlab.curves.weierstrass import WeierstrassCurve
from heightlab.numeric import InputError, ord_p

E11 = WeierstrassCurve.parse("0,-1,1,-10,-20")
E37 = WeierstrassCurve.parse("0,0,1,-1,0")


def _b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


# --- invariants -------------------------------------------------------------------------

def test_j_of_special_short_curves():
    assert WeierstrassCurve.parse("0,1").j == 0
    assert WeierstrassCurve.parse("1,0").j == 1728


def test_invariants_of_11a1_against_b_formulas():
    b2, b4, b6, b8 = _b_invariants(*E11.ainvs)
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    inv = E11.invariants()
    assert inv["disc"] == disc == -161051
    assert inv["c4"] == c4 and inv["c6"] == c6
    assert inv["j"] == Fraction(c4**3, disc) == Fraction(-122023936, 161051)
    assert c4**3 - c6**2 == 1728 * disc


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_short_form_j_formula(A, B):
    assume(4 * A**3 + 27 * B**2 != 0)
    E = WeierstrassCurve.short(A, B)
    assert E.j == Fraction(1728 * (4 * A) ** 3, 16 * (4 * A**3 + 27 * B**2))
    assert E.c4**3 - E.c6**2 == 1728 * E.disc


def test_singular_curve_rejected():
    with pytest.raises(InputError):
        WeierstrassCurve.parse("0,0")
    with pytest.raises(InputError):
        WeierstrassCurve.parse("0,0,0,-3,2")


def test_parse_errors():
    for bad in ["1", "1,2,3", "a,b", "1/0,1"]:
        with pytest.raises(InputError):
            WeierstrassCurve.parse(bad)


def test_short_integral_model_is_isomorphic():
    Es, T = E11.short_integral_model()
    assert Es.is_short and Es.is_integral
    assert Es.j == E11.j
    P = CurvePoint(5, 5)
    assert on_curve(E11, P) and on_curve(Es, map_point(T, P))


# --- group law ---------------------------------------------------------------------------

@st.composite
def curve_with_point(draw):
    """A short curve through a chosen rational point."""
    A = draw(st.integers(-20, 20))
    x0 = Fraction(draw(st.integers(-12, 12)), draw(st.sampled_from([1, 4, 9])))
    y0 = Fraction(draw(st.integers(-12, 12)), draw(st.sampled_from([1, 8, 27])))
    B = y0 * y0 - x0**3 - A * x0
    assume(4 * A**3 + 27 * B * B != 0)
    return WeierstrassCurve.short(A, B), CurvePoint(x0, y0)


def test_identity_and_inverse():
    P = CurvePoint(0, 0)
    assert group_law(E37, P, CurvePoint()) == P
    assert group_law(E37, P, neg(E37, P)).is_infinity


@given(curve_with_point(), st.integers(-10, 10), st.integers(-10, 10))
@settings(max_examples=200)
def test_scalar_mul_additive(data, m, n):
    E, P = data
    lhs = scalar_mul(E, m + n, P)
    assert lhs == group_law(E, scalar_mul(E, m, P), scalar_mul(E, n, P))
    assert on_curve(E, lhs)


@given(curve_with_point(), st.integers(-4, 4), st.integers(-4, 4))
@settings(max_examples=200)
def test_group_law_commutative_and_associative(data, m, n):
    E, P = data
    Q, R = scalar_mul(E, m, P), scalar_mul(E, n, P)
    assert group_law(E, P, Q) == group_law(E, Q, P)
    assert group_law(E, group_law(E, P, Q), R) == group_law(E, P, group_law(E, Q, R))


def test_group_law_commutative_independent_points():
    # two independent points on the rank-2 curve 389a1
    E = WeierstrassCurve.parse("0,1,1,-2,0")
    P, Q = CurvePoint(-1, 1), CurvePoint(0, 0)
    for m in range(-3, 4):
        for n in range(-3, 4):
            A, B = scalar_mul(E, m, P), scalar_mul(E, n, Q)
            assert group_law(E, A, B) == group_law(E, B, A)
            assert on_curve(E, group_law(E, A, B))


def test_long_form_group_law():
    P = CurvePoint(0, 0)
    seen = [scalar_mul(E37, k, P) for k in range(1, 8)]
    assert all(on_curve(E37, Q) for Q in seen)
    assert seen[1] == CurvePoint(1, 0)


# --- quadratic fields ------------------------------------------------------------------------

def test_quadelt_arithmetic():
    r = QuadElt.sqrt(2)
    assert r * r == QuadElt(2, 0, 2)
    assert (1 + r) * (1 - r) == QuadElt(-1, 0, 2)
    assert (1 + r).norm() == -1
    assert (3 + r).minpoly().coeffs == (7, -6, 1)
    with pytest.raises(MixedFieldError):
        QuadElt.sqrt(2) + QuadElt.sqrt(3)


def test_quadratic_point_on_curve():
    E = WeierstrassCurve.short(0, 1)
    P = CurvePoint(5, QuadElt(0, 3, 14))
    assert on_curve(E, P)
    assert on_curve(E, scalar_mul(E, 3, P))


# --- reduction ------------------------------------------------------------------------------

def test_good_reduction_example():
    loc = reduction_type(WeierstrassCurve.short(1, 0), 5)
    assert loc.type == GOOD and loc.ord_min_disc == 0


def test_11a1_split_at_11():
    loc = reduction_type(E11, 11)
    assert loc.type == MULT_SPLIT and loc.component_index_N == 5
    # oracle: nonsingular points of the reduction number p - 1
    assert count_nonsingular_points(loc.minimal_curve, 11) == 10
    assert -ord_p(E11.j, 11) == 5


def test_37a1_reduction_is_nonsplit():
    loc = reduction_type(E37, 37)
    assert loc.type == MULT_NONSPLIT and loc.component_index_N == 1
    assert count_nonsingular_points(loc.minimal_curve, 37) == 38
    assert tangent_split(E37, 37) is False


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_twin_curve_additive_potgood(p):
    loc = reduction_type(WeierstrassCurve.short(p * p, 0), p)
    assert loc.type == ADDITIVE and loc.potential_type == "PotGood"


def test_minimal_model_reduces_discriminant():
    E = WeierstrassCurve.short(5**4 * 2, 5**6 * 3)   # a scaled model, not minimal at 5
    loc = minimal_model_at(E, 5)
    assert loc.ord_min_disc == ord_p(E.disc, 5) - 12


def test_corpus_is_large_enough():
    assert len(corpus_pairs()) >= 50
    assert all(rec["source"] for rec in load_corpus())


@pytest.mark.parametrize("E,exp", corpus_pairs(), ids=lambda v: v.ainvs_str() if hasattr(v, "ainvs_str") else str(v.get("p", "")))
def test_reduction_agrees_with_count_oracle(E, exp):
    p = exp["p"]
    loc = reduction_type(E, p)
    assert loc.type == exp["type"]
    assert loc.ord_min_disc == exp["ord_min_disc"]
    assert loc.type == classify_by_count(loc.minimal_curve, p)
    assert (loc.type == GOOD) == (loc.ord_min_disc == 0)
    assert (loc.potential_type == "PotMult") == (ord_p(E.j, p) < 0)
    if loc.type in (MULT_SPLIT, MULT_NONSPLIT):
        ns = count_nonsingular_points(loc.minimal_curve, p)
        assert ns == (p - 1 if loc.type == MULT_SPLIT else p + 1)
        assert loc.component_index_N == loc.ord_min_disc == -ord_p(E.j, p) >= 1
        assert tangent_split(E, p) == (loc.type == MULT_SPLIT)


# --- torsion and division polynomials ---------------------------------------------------------

def test_full_two_torsion():
    T = rational_torsion(WeierstrassCurve.short(-1, 0))
    assert len(T) == 4
    assert all(P.is_infinity or P.y == 0 for P in T)


def _lutz_nagell_oracle(A: int, B: int):
    """Integral points with y = 0 or y^2 | D that have finite order, by direct multiples."""
    D = 4 * A**3 + 27 * B * B
    E = WeierstrassCurve.short(A, B)
    ys = [0] + [y for y in range(1, math.isqrt(abs(D)) + 1) if D % (y * y) == 0]
    out = {CurvePoint()}
    for y in ys:
        for sy in {y, -y}:
            for x in range(-abs(D) - 2, abs(D) + 3):
                if x**3 + A * x + B == sy * sy:
                    P = CurvePoint(x, sy)
                    if any(scalar_mul(E, k, P).is_infinity for k in range(1, 13)):
                        out.add(P)
    return out


@pytest.mark.parametrize("A,B,order", [(0, 2, 1), (0, 1, 6), (-1, 0, 4), (0, -432, 3), (-43, 166, 7)])
def test_torsion_against_lutz_nagell(A, B, order):
    E = WeierstrassCurve.short(A, B)
    T = rational_torsion(E)
    assert len(T) == order
    if abs(4 * A**3 + 27 * B * B) < 5000:
        assert set(T) == _lutz_nagell_oracle(A, B)
    assert torsion_closed(E, T)


def test_torsion_order_six_generator():
    E = WeierstrassCurve.short(0, 1)
    P = CurvePoint(2, 3)
    assert [scalar_mul(E, k, P).is_infinity for k in range(1, 7)] == [False] * 5 + [True]


@pytest.mark.parametrize("ainvs", ["0,-1,1,-10,-20", "1,0,1,4,-6", "1,1,1,-10,-10", "0,0,0,0,1", "0,0,0,-1,0"])
def test_torsion_group_plausible(ainvs):
    E = WeierstrassCurve.parse(ainvs)
    T = rational_torsion(E)
    assert len(T) in set(range(1, 11)) | {12}
    assert torsion_closed(E, T)
    for P in T:
        assert neg(E, P) in T


def test_division_polynomial_psi3():
    E = WeierstrassCurve.short(-2, 3)
    assert division_polynomial(E, 3).coeffs == (-4, 36, -12, 0, 3)


@pytest.mark.parametrize("A,B,pt", [(0, 1, (2, 3)), (0, 1, (0, 1)), (-1, 0, (0, 0)), (-2, 0, (-1, 1)),
                                    (0, -432, (12, 36)), (0, 17, (-2, 3))])
def test_torsion_polynomial_vanishing(A, B, pt):
    E = WeierstrassCurve.short(A, B)
    P = CurvePoint(*pt)
    for m in range(1, 13):
        val = torsion_polynomial(E, m)(P.x) if m > 1 else 1
        assert (val == 0) == scalar_mul(E, m, P).is_infinity


# --- twists -----------------------------------------------------------------------------------

def test_twist_examples():
    E = WeierstrassCurve.short(-2, 3)
    assert twist(E, 1) == E
    p = 7
    assert twist(WeierstrassCurve.short(-2 * p * p, 0), Fraction(1, p)) == WeierstrassCurve.short(-2, 0)


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-50, 50).filter(bool), st.integers(1, 20))
@settings(max_examples=100)
def test_twist_preserves_j(A, B, n, d):
    assume(4 * A**3 + 27 * B * B != 0)
    E = WeierstrassCurve.short(A, B)
    assert twist(E, Fraction(n, d)).j == E.j


def test_twist_point_maps_x():
    E = WeierstrassCurve.short(-2, 0)
    g = Fraction(4)
    Q = twist_point(g, CurvePoint(-1, 1))
    assert Q.x == twist_x(g, -1) == -4
    assert on_curve(twist(E, g), Q)


# --- point search -----------------------------------------------------------------------------

def test_point_search_contains_small_points():
    pts = set(rational_point_search(WeierstrassCurve.short(-2, 0), 1))
    assert {CurvePoint(-1, 1), CurvePoint(-1, -1), CurvePoint(0, 0)} <= pts


def test_point_search_against_brute_force():
    E = WeierstrassCurve.short(0, 7)
    H = 2
    oracle = set()
    for d in range(1, 3):
        for n in range(-8, 9):
            if math.gcd(n, d) != 1 or max(abs(n), d * d) > math.exp(H):
                continue
            x = Fraction(n, d * d)
            r = x**3 + 7
            if r >= 0:
                s = Fraction(math.isqrt(r.numerator), math.isqrt(r.denominator))
                if s * s == r:
                    oracle |= {CurvePoint(x, s), CurvePoint(x, -s)}
    assert set(rational_point_search(E, H)) == oracle
