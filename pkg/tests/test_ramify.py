from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heightlab.curves import CurvePoint, QuadElt, WeierstrassCurve, on_curve
from heightlab.numeric import InputError, IntPoly, is_squarefree, squarefree_mod_p
from heightlab.ramify import (INCONCLUSIVE, UNRAMIFIED, SearchExhausted, biquadratic_index,
                              compositum_index_bound, compositum_subfield_bound, construct_unramified_point,
                              quadratic_ramification, ramification_index_quadratic, squarefree_part,
                              unramified_certificate)

from .conftest import SMALL_PRIMES

SQUAREFREE_SMALL = [D for D in range(-30, 31) if D not in (0, 1) and is_squarefree(D)]
PRIMES_30 = [p for p in SMALL_PRIMES if p <= 30]


def _disc_oracle(D: int, p: int) -> bool:
    """p ramifies in Q(sqrt D) iff p divides the field discriminant (D or 4D)."""
    disc = D if D % 4 == 1 else 4 * D
    return disc % p == 0


# --- quadratic fields --------------------------------------------------------------------

@pytest.mark.parametrize("D,p,verdict,index", [(2, 3, UNRAMIFIED, 1), (5, 5, "RamifiedWithIndex(2)", 2),
                                               (-1, 2, "RamifiedWithIndex(2)", 2)])
def test_quadratic_examples(D, p, verdict, index):
    c = quadratic_ramification(D, p)
    assert c.verdict == verdict and c.index == index


def test_gaussian_field_minpoly_not_squarefree_mod_2():
    assert not squarefree_mod_p(IntPoly([1, 0, 1]), 2)


@pytest.mark.parametrize("D", [0, 1, 12, -8])
def test_quadratic_rejects_bad_D(D):
    with pytest.raises(InputError):
        quadratic_ramification(D, 3)


@pytest.mark.parametrize("D", SQUAREFREE_SMALL)
@pytest.mark.parametrize("p", PRIMES_30)
def test_quadratic_matches_discriminant(D, p):
    c = quadratic_ramification(D, p)
    assert c.verdict != INCONCLUSIVE
    assert (not c.unramified) == _disc_oracle(D, p)
    assert ramification_index_quadratic(D, p) == (2 if _disc_oracle(D, p) else 1)


def test_squarefree_part():
    assert squarefree_part(126) == 14
    assert squarefree_part(-50) == -2


# --- certificates ----------------------------------------------------------------------------

@pytest.mark.parametrize("coeffs,p,verdict", [([-2, 0, 1], 5, UNRAMIFIED), ([-5, 0, 1], 5, INCONCLUSIVE),
                                              ([-3, 0, 0, 1], 2, UNRAMIFIED)])
def test_certificate_examples(coeffs, p, verdict):
    assert unramified_certificate(IntPoly(coeffs), p).verdict == verdict


def test_certificate_soundness_500_samples():
    rng = random.Random(11)
    primes = [p for p in SMALL_PRIMES if p <= 100]
    n = 0
    while n < 500:
        D = rng.randint(-10**4, 10**4)
        if D in (0, 1) or not is_squarefree(D):
            continue
        p = rng.choice(primes)
        n += 1
        cert = unramified_certificate(IntPoly([-D, 0, 1]), p)
        if cert.unramified:
            assert quadratic_ramification(D, p).unramified


@given(st.integers(-10**5, 10**5).filter(lambda D: D not in (0, 1) and is_squarefree(D)),
       st.sampled_from(SMALL_PRIMES))
@settings(max_examples=300)
def test_certificate_soundness_property(D, p):
    if unramified_certificate(IntPoly([-D, 0, 1]), p).unramified:
        assert quadratic_ramification(D, p).unramified


# --- composita ----------------------------------------------------------------------------------

def test_biquadratic_examples():
    assert biquadratic_index(2, 3, 5) == 1
    assert biquadratic_index(2, 3, 3) == 2
    assert biquadratic_index(3, 7, 3) == 2      # sqrt 21 ramified too, sqrt(7) unramified
    assert biquadratic_index(-1, 3, 3) == 2


def test_compositum_bounds_exhaustive():
    for p in PRIMES_30:
        for D1 in SQUAREFREE_SMALL:
            for D2 in SQUAREFREE_SMALL:
                if D1 == D2:
                    continue
                assert compositum_subfield_bound(D1, D2, p)
                assert compositum_index_bound(D1, D2, p)
                e = biquadratic_index(D1, D2, p)
                e1, e2 = ramification_index_quadratic(D1, p), ramification_index_quadratic(D2, p)
                assert e <= e1 * e2
                D3 = squarefree_part(D1 * D2)
                if e1 == e2 == 1 and D3 != 1:
                    assert quadratic_ramification(D3, p).unramified


# --- the point constructor ------------------------------------------------------------------------

def _check_output(R, E):
    assert R.nontorsion and R.unramified
    assert all(c.unramified for c in R.certificates)
    if R.x is None:
        # x is a root of x^3 + Ax + B - y^2
        assert R.x_poly.coeffs == (int(E.B - R.y * R.y), int(E.A), 0, 1)
    elif not isinstance(R.x, QuadElt):
        assert R.x_poly(R.x) == 0
        assert on_curve(E, CurvePoint(R.x, R.y))


def test_construct_v_B_zero_p5():
    E = WeierstrassCurve.short(0, 1)
    R = construct_unramified_point(E, 5)
    assert R.case == "v(B)=0" and R.x == 5
    assert R.y == QuadElt(0, 3, 14) and R.y_poly.coeffs == (-126, 0, 1)
    assert R.certificates[0].subject == ("QuadField", 14)
    _check_output(R, E)


def test_construct_both_positive_p5():
    E = WeierstrassCurve.short(25, 5)
    R = construct_unramified_point(E, 5)
    assert R.case == "v(A),v(B)>0" and R.x == 6
    assert R.y_poly.coeffs == (-371, 0, 1)
    assert quadratic_ramification(371, 5).unramified
    _check_output(R, E)


def test_construct_p2_branch():
    E = WeierstrassCurve.short(0, 1)
    R = construct_unramified_point(E, 2)
    assert R.case == "p=2" and R.y == 2
    assert R.x_poly.coeffs == (-3, 0, 0, 1)
    _check_output(R, E)


def test_construct_v_A_zero_irrational_sqrt():
    E = WeierstrassCurve.short(2, 7)
    R = construct_unramified_point(E, 7)
    assert R.case == "v(A)=0,v(B)>0"
    assert R.x == QuadElt(7, 1, 2)
    # y has degree 4 here: y^2 = c0 + c1 sqrt 2, so y^4 - 2 c0 y^2 + (c0^2 - 2 c1^2) = 0
    x = R.x
    r = x * x * x + 2 * x + 7
    c0, c1 = r.a, r.b
    assert R.y_poly.coeffs == (int(c0 * c0 - 2 * c1 * c1), 0, int(-2 * c0), 0, 1)
    assert R.unramified and R.nontorsion


def test_construct_v_A_zero_square_A():
    E = WeierstrassCurve.short(4, 7)
    R = construct_unramified_point(E, 7)
    assert R.case == "v(A)=0,v(B)>0"
    _check_output(R, E)


def test_construct_requires_integral_short_model():
    with pytest.raises(InputError):
        construct_unramified_point(WeierstrassCurve.parse("0,0,1,-1,0"), 5)
    with pytest.raises(InputError):
        construct_unramified_point(WeierstrassCurve.short(1, "1/5"), 5)


def test_search_cap():
    with pytest.raises((SearchExhausted, InputError)):
        construct_unramified_point(WeierstrassCurve.short(0, 1), 5, n_cap=0)
