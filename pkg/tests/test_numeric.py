from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heightlab.numeric import (INF, DomainError, InputError, IntPoly, RealApprox, as_fraction, fmt_q,
                               height_from_minpoly, lambert_w, ord_p, positivity_threshold, precision,
                               squarefree_mod_p, weil_height_rational)
from heightlab.numeric.real import tolerance

from .conftest import SMALL_PRIMES, nonzero_rationals


# --- rationals and valuations ------------------------------------------------------------

@pytest.mark.parametrize("x,p,v", [(Fraction(8, 3), 2, 3), (Fraction(1), 3, 0), (Fraction(7, 25), 5, -2)])
def test_ord_p_examples(x, p, v):
    assert ord_p(x, p) == v


def test_ord_p_zero_is_infinite():
    assert ord_p(0, 7) is INF
    assert ord_p(0, 7) > 10**100


def test_ord_p_rejects_nonprime():
    with pytest.raises(InputError):
        ord_p(Fraction(3), 4)


@given(nonzero_rationals(), nonzero_rationals(), st.sampled_from(SMALL_PRIMES))
@settings(max_examples=300)
def test_ord_p_additive_and_ultrametric(x, y, p):
    assert ord_p(x * y, p) == ord_p(x, p) + ord_p(y, p)
    assert ord_p(x + y, p) >= min(ord_p(x, p), ord_p(y, p))


def test_fmt_q_and_parse():
    assert fmt_q(Fraction(-6, 4)) == "-3/2"
    assert fmt_q(Fraction(0)) == "0"
    assert as_fraction("-3/2") == Fraction(-3, 2)
    with pytest.raises(InputError):
        as_fraction("1/0")


# --- heights of rationals and algebraic numbers ---------------------------------------------

@pytest.mark.parametrize("x,expected", [(1, 0), (2, math.log(2)), (Fraction(3, 5), math.log(5))])
def test_weil_height_examples(x, expected):
    assert abs(weil_height_rational(x).value - expected) < 1e-15


@given(nonzero_rationals())
@settings(max_examples=300)
def test_weil_height_inversion_symmetric(x):
    h, hi = weil_height_rational(x), weil_height_rational(1 / x)
    assert h.value >= 0
    assert h.close_to(hi, 1e-30)


@pytest.mark.parametrize("n", range(1, 11))
def test_root_of_two_height(n):
    h = height_from_minpoly(IntPoly([-2] + [0] * (n - 1) + [1]), 1e-12)
    assert abs(h.value - mpmath.log(2) / n) <= 1e-9
    with precision(512):
        assert h.contains(mpmath.log(2) / n)


@pytest.mark.parametrize("coeffs", [[-1, 1], [1, 1, 1]])
def test_height_of_units_and_roots_of_unity(coeffs):
    assert abs(height_from_minpoly(IntPoly(coeffs), 1e-12).value) <= 1e-9


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
@settings(max_examples=150)
def test_minpoly_height_matches_rational_height(n, d):
    g = math.gcd(n, d)
    n, d = n // g, d // g
    h1 = height_from_minpoly(IntPoly([-n, d]), 1e-12)
    h2 = weil_height_rational(Fraction(n, d))
    assert abs(h1.value - h2.value) <= 1e-9


def test_height_from_minpoly_quadratic_oracle():
    # x^2 - x - 1: Mahler measure is the golden ratio
    h = height_from_minpoly(IntPoly([-1, -1, 1]), 1e-12)
    assert abs(h.value - mpmath.log((1 + mpmath.sqrt(5)) / 2) / 2) < 1e-9


# --- polynomials mod p -----------------------------------------------------------------------

def test_squarefree_mod_p():
    assert squarefree_mod_p(IntPoly([-2, 0, 1]), 5)
    assert not squarefree_mod_p(IntPoly([-5, 0, 1]), 5)
    assert squarefree_mod_p(IntPoly([-3, 0, 0, 1]), 2)


def test_intpoly_trims_and_primitive():
    g = IntPoly([2, 4, 0, 0])
    assert g.degree == 1
    assert g.primitive().coeffs == (1, 2)


# --- RealApprox -------------------------------------------------------------------------------

@given(st.floats(-1e6, 1e6), st.floats(0, 1), st.floats(-1e6, 1e6), st.floats(0, 1))
@settings(max_examples=200)
def test_realapprox_interval_semantics(a, ea, b, eb):
    x, y = RealApprox(a, ea), RealApprox(b, eb)
    for op, f in [(lambda u, v: u + v, lambda u, v: u + v), (lambda u, v: u - v, lambda u, v: u - v),
                  (lambda u, v: u * v, lambda u, v: u * v)]:
        z = op(x, y)
        for u in (x.lo, x.hi):
            for v in (y.lo, y.hi):
                w = f(u, v)
                assert z.lo - abs(w) * 1e-30 <= w <= z.hi + abs(w) * 1e-30


def test_tolerance_floor():
    assert tolerance(RealApprox(1, 0)) == mpmath.mpf("1e-9")
    assert tolerance(RealApprox(1, 1), RealApprox(0, 1)) == 6


def test_precision_context_restores():
    before = mpmath.mp.prec
    with precision(300):
        assert mpmath.mp.prec == 300
    assert mpmath.mp.prec == before


# --- Lambert W and the positivity threshold ------------------------------------------------

def test_lambert_examples():
    assert abs(lambert_w(-1, -mpmath.exp(-1)).value + 1) <= 1e-9
    assert lambert_w(0, 0).value == 0


def test_lambert_branch_minus_one_against_bisection():
    oracle = mpmath.findroot(lambda x: x * mpmath.exp(x) + mpmath.mpf("0.1"), (-50, -1), solver="bisect")
    w = lambert_w(-1, -0.1)
    assert abs(w.value - oracle) < 1e-9
    assert abs(w.value - mpmath.mpf("-3.5772")) < 1e-4


def test_lambert_domain():
    with pytest.raises(DomainError):
        lambert_w(-1, 0.5)
    with pytest.raises(DomainError):
        lambert_w(0, -1)


@given(st.sampled_from([0, -1]), st.floats(-0.3678, -1e-6))
@settings(max_examples=200)
def test_lambert_inverts(branch, y):
    w = lambert_w(branch, y)
    assert abs(w.value * mpmath.exp(w.value) - y) <= tolerance(w) + abs(y) * 1e-12
    if branch == -1:
        assert w.value <= -1
    else:
        assert w.value >= -1


@given(st.floats(0, 1e6))
def test_lambert_principal_positive(y):
    w = lambert_w(0, y)
    assert w.value >= 0
    assert abs(w.value * mpmath.exp(w.value) - y) <= 1e-9 * max(1, y)


def test_threshold_examples():
    t = positivity_threshold(1, 1)
    assert abs(t.root.value - 1) < 1e-9
    t = positivity_threshold(1, 2)
    oracle = mpmath.findroot(lambda x: x - 2 - mpmath.log(x), (1, 10), solver="bisect")
    assert abs(t.root.value - oracle) < 1e-9
    assert abs(t.root.value - 3.146) < 1e-3
    assert t.r(t.root.value * mpmath.mpf("1.001")) > 0


@given(st.floats(1e-4, 50), st.floats(0, 100))
@settings(max_examples=500)
def test_threshold_bracket(a, extra):
    b = a + extra
    t = positivity_threshold(a, b)
    root = t.root.value
    assert mpmath.mpf(5) / 8 < root < (8 / (5 * mpmath.mpf(a))) * (mpmath.log(1 / mpmath.mpf(a)) + b)
    assert t.r(root + mpmath.mpf("1e-6") + mpmath.mpf("1e-6") * root) > 0


def test_threshold_rejects_bad_input():
    with pytest.raises(InputError):
        positivity_threshold(2, 1)
