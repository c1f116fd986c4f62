"""Certified escape-rate heights for degree-d endomorphisms of P^1 over Q.

For a homogeneous lift Phi = (F, G) with integer coefficients and a
primitive integer vector c representing x, the canonical height is the sum
over places of the escape rates lim d^-n log||Phi^n(c)||_v.  Only the
archimedean place and the primes dividing Res(F, G) contribute.

* Archimedean: iterate the sup-normalised point in interval arithmetic;
  every step contributes d^-(n+1) log||Phi(c_n)|| with ||c_n|| = 1, which
  lies in [L, U] for explicit constants, so the tail after S steps is at
  most max(|L|, |U|) / ((d - 1) d^S).
* p-adic: iterate exactly modulo a power of p, recording k_n = the
  p-valuation lost at each step; k_n <= ord_p(Res) bounds the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath
from mpmath import iv, mpf

from ..numeric.arith import InputError, PrecisionError, as_fraction, factor
from ..numeric.poly import q_gcdex
from ..numeric.real import RealApprox, working_precision

MAX_PRECISION = 1 << 14


def bareiss_det(M: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    M = [row[:] for row in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def homogeneous_resultant(F: tuple[int, ...], G: tuple[int, ...], d: int) -> int:
    """Res(F, G) of two binary forms of degree d given by ascending X-coefficients."""
    fd = [F[i] if i < len(F) else 0 for i in range(d, -1, -1)]
    gd = [G[i] if i < len(G) else 0 for i in range(d, -1, -1)]
    n = 2 * d
    M = []
    for k in range(d):
        M.append([0] * k + fd + [0] * (n - k - d - 1))
    for k in range(d):
        M.append([0] * k + gd + [0] * (n - k - d - 1))
    return bareiss_det(M)


def _abs_coeff_sum(cs) -> Fraction:
    return sum((abs(Fraction(c)) for c in cs), Fraction(0))


@dataclass(frozen=True)
class HomogMap:
    """x -> F(x, 1) / G(x, 1) with F, G binary forms of degree d (ascending in X)."""

    F: tuple[int, ...]
    G: tuple[int, ...]
    d: int = field(default=4)

    def __post_init__(self):
        F = tuple(int(c) for c in self.F) + (0,) * (self.d + 1 - len(self.F))
        G = tuple(int(c) for c in self.G) + (0,) * (self.d + 1 - len(self.G))
        object.__setattr__(self, "F", F[: self.d + 1])
        object.__setattr__(self, "G", G[: self.d + 1])
        if self.resultant == 0:
            raise InputError("F and G have a common zero; not a morphism of degree d")

    @cached_property
    def resultant(self) -> int:
        return homogeneous_resultant(self.F, self.G, self.d)

    @cached_property
    def bad_primes(self) -> list[int]:
        return sorted(factor(self.resultant))

    @cached_property
    def upper_log(self) -> float:
        """U with log||Phi(z)|| <= U whenever ||z|| = 1."""
        return math.log(max(sum(abs(c) for c in self.F), sum(abs(c) for c in self.G)))

    @cached_property
    def lower_log(self) -> float:
        """L with log||Phi(z)|| >= L whenever ||z|| = 1 (from s F + t G = 1 in both charts)."""
        worst = Fraction(0)
        for chart in (0, 1):
            if chart == 0:  # Z = 1, |X| <= 1
                f, g = list(self.F), list(self.G)
            else:  # X = 1, |Z| <= 1
                f, g = list(reversed(self.F)), list(reversed(self.G))
            while f and f[-1] == 0:
                f.pop()
            while g and g[-1] == 0:
                g.pop()
            s, t = q_gcdex(f, g)
            worst = max(worst, _abs_coeff_sum(s) + _abs_coeff_sum(t))
        return -math.log(float(worst))

    @cached_property
    def step_constant(self) -> float:
        """C with |h(phi(b)) - d h(b)| <= C for every rational b."""
        R = abs(self.resultant)
        c = max(self.upper_log, math.log(R) - self.lower_log)
        return c * (1 + 1e-9) + 1e-12

    @cached_property
    def height_gap(self) -> float:
        """C / (d - 1): bound on |canonical height - naive height|."""
        return self.step_constant / (self.d - 1)

    def __call__(self, x):
        """Exact image of a rational, or None for the point at infinity."""
        if x is None:
            return None if self.G[self.d] == 0 else Fraction(self.F[self.d], self.G[self.d])
        x = as_fraction(x)
        a, b = x.numerator, x.denominator
        num = sum(c * a**i * b ** (self.d - i) for i, c in enumerate(self.F))
        den = sum(c * a**i * b ** (self.d - i) for i, c in enumerate(self.G))
        if den == 0:
            return None
        return Fraction(num, den)

    def eval_pair(self, a: int, b: int) -> tuple[int, int]:
        d = self.d
        X = [1]
        Z = [1]
        for _ in range(d):
            X.append(X[-1] * a)
            Z.append(Z[-1] * b)
        return (sum(c * X[i] * Z[d - i] for i, c in enumerate(self.F)),
                sum(c * X[i] * Z[d - i] for i, c in enumerate(self.G)))


def _iv_form(coeffs, X, Z, d):
    acc = iv.mpf(coeffs[d])
    Zp = [iv.mpf(1)]
    for _ in range(d):
        Zp.append(Zp[-1] * Z)
    for i in range(d - 1, -1, -1):
        acc = acc * X + coeffs[i] * Zp[d - i]
    return acc


def _iv_abs(z):
    lo, hi = z.a, z.b
    if lo >= 0:
        return z
    if hi <= 0:
        return -z
    return iv.mpf([0, max(-lo, hi)])


def _iv_max(u, v):
    return iv.mpf([max(u.a, v.a), max(u.b, v.b)])


def _steps_for(phi: HomogMap, eps: float, bound: float) -> int:
    # tail bound / ((d - 1) d^S) <= eps
    S = 1
    while bound / ((phi.d - 1) * phi.d**S) > eps:
        S += 1
    return S


def archimedean_escape(phi: HomogMap, a: int, b: int, eps: float) -> RealApprox:
    """lim d^-n log||Phi^n(a, b)||_inf with certified error <= eps."""
    d = phi.d
    bound = max(abs(phi.upper_log), abs(phi.lower_log))
    S = _steps_for(phi, eps / 2, bound)
    tail = bound / ((d - 1) * d**S)
    prec = working_precision() + 4 * S + 32
    while prec <= MAX_PRECISION:
        old = iv.prec
        iv.prec = prec
        try:
            X, Z = iv.mpf(a), iv.mpf(b)
            norm = _iv_max(_iv_abs(X), _iv_abs(Z))
            total = iv.log(norm)
            X, Z = X / norm, Z / norm
            weight = iv.mpf(1)
            ok = True
            for _ in range(S):
                weight = weight / d
                Fv, Gv = _iv_form(phi.F, X, Z, d), _iv_form(phi.G, X, Z, d)
                mu = _iv_max(_iv_abs(Fv), _iv_abs(Gv))
                if mu.a <= 0:
                    ok = False
                    break
                total = total + weight * iv.log(mu)
                X, Z = Fv / mu, Gv / mu
            if ok:
                lo, hi = mpf(total.a), mpf(total.b)
                width = (hi - lo) / 2
                if width <= eps / 2:
                    with mpmath.workprec(prec):
                        return RealApprox((lo + hi) / 2, width + mpf(tail))
        finally:
            iv.prec = old
        prec *= 2
    raise PrecisionError("archimedean escape rate: interval iteration did not converge")


def padic_escape(phi: HomogMap, a: int, b: int, p: int, eps: float) -> RealApprox:
    """lim d^-n log||Phi^n(a, b)||_p for a p-primitive pair, certified to eps."""
    d = phi.d
    r = 0
    R = phi.resultant
    while R % p == 0:
        R //= p
        r += 1
    if r == 0:
        return RealApprox(0, 0)
    logp = math.log(p)
    S = _steps_for(phi, eps / 2, r * logp)
    M = r * (S + 1) + 2
    mod = p**M
    X, Z = a % mod, b % mod
    acc = Fraction(0)
    scale = Fraction(1)
    for _ in range(S):
        scale /= d
        Fv, Gv = phi.eval_pair(X, Z)
        Fv, Gv = Fv % mod, Gv % mod
        k = 0
        while k <= r and Fv % p == 0 and Gv % p == 0:
            Fv //= p
            Gv //= p
            k += 1
        if k > r:
            raise ArithmeticError("valuation drop exceeds ord_p(Res); pair was not primitive")
        mod //= p**k
        X, Z = Fv % mod, Gv % mod
        acc += k * scale
    # G_p = -log p * (acc + tail), tail in [0, r / ((d - 1) d^S)]
    tail = Fraction(r, (d - 1) * d**S)
    lo = -(acc + tail)
    hi = -acc
    mid = (lo + hi) / 2
    L = mpmath.log(p)
    return RealApprox(L * (mid.numerator / mpf(mid.denominator)),
                      L * (tail.numerator / mpf(2 * tail.denominator)) + abs(L) * mpf(2) ** (8 - mpmath.mp.prec))


@dataclass(frozen=True)
class EscapeHeight:
    value: RealApprox
    archimedean: RealApprox
    nonarchimedean: dict


def escape_height(phi: HomogMap, x, eps=1e-12) -> EscapeHeight:
    """Canonical height of the rational x (or None = infinity) for the map phi."""
    eps = float(eps)
    if x is None:
        a, b = 1, 0
    else:
        x = as_fraction(x)
        a, b = x.numerator, x.denominator
    primes = phi.bad_primes
    share = eps / (1 + len(primes))
    arch = archimedean_escape(phi, a, b, share)
    total = arch
    parts = {}
    for p in primes:
        g = padic_escape(phi, a, b, p, share)
        parts[p] = g
        total = total + g
    return EscapeHeight(value=total, archimedean=arch, nonarchimedean=parts)
