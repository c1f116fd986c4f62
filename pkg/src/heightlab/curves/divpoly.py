"""Division polynomials of short Weierstrass models and non-torsion certificates."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..numeric.arith import InputError
from ..numeric.poly import IntPoly, q_gcd, q_mul, q_rem, q_sub
from .weierstrass import WeierstrassCurve, _integralizing_scale


@lru_cache(maxsize=256)
def _x_only_table(A: int, B: int, m: int) -> tuple[IntPoly, ...]:
    """f_0..f_m with f_k = psi_k (k odd) and f_k = psi_k / (2y) (k even)."""
    x = IntPoly.x()
    F = (x**3 + IntPoly.const(A) * x + IntPoly.const(B)) * 4  # (2y)^2
    F2 = F * F
    f = [IntPoly(()), IntPoly.const(1), IntPoly.const(1),
         IntPoly((-A * A, 12 * B, 6 * A, 0, 3)),
         IntPoly((-8 * B * B - A**3, -4 * A * B, -5 * A * A, 20 * B, 5 * A, 0, 1)) * 2]
    for k in range(5, m + 1):
        n = k // 2
        if k % 2:
            if n % 2 == 0:
                val = F2 * f[n + 2] * f[n] ** 3 - f[n - 1] * f[n + 1] ** 3
            else:
                val = f[n + 2] * f[n] ** 3 - F2 * f[n - 1] * f[n + 1] ** 3
        else:
            val = f[n] * (f[n + 2] * f[n - 1] ** 2 - f[n - 2] * f[n + 1] ** 2)
        f.append(val)
    return tuple(f[: m + 1])


def _short_scale(E: WeierstrassCurve) -> tuple[int, int, int]:
    """(k, A k^4, B k^6) with the scaled coefficients integral."""
    if not E.is_short:
        raise InputError("division polynomials are implemented for short models")
    k = _integralizing_scale({4: E.a4, 6: E.a6})
    A, B = E.a4 * k**4, E.a6 * k**6
    return k, int(A), int(B)


def _rescale(g: IntPoly, k: int) -> IntPoly:
    # roots of g live on the k-scaled model (x' = k^2 x); pull them back
    if k == 1:
        return g
    return g.scale_variable(Fraction(k * k))


def division_polynomial(E: WeierstrassCurve, m: int) -> IntPoly:
    """psi_m for odd m and psi_m / psi_2 for even m, as a polynomial in x.

    For an integral model the coefficients are the usual ones
    (psi_3 = 3x^4 + 6Ax^2 + 12Bx - A^2); a non-integral model is
    rescaled and the result made primitive.
    """
    if m < 1:
        raise InputError("m must be at least 1")
    k, A, B = _short_scale(E)
    return _rescale(_x_only_table(A, B, m)[m], k)


def torsion_polynomial(E: WeierstrassCurve, m: int) -> IntPoly:
    """Polynomial whose roots are the x-coordinates of all nonzero points of E[m]."""
    if m < 1:
        raise InputError("m must be at least 1")
    k, A, B = _short_scale(E)
    g = _x_only_table(A, B, m)[m]
    if m % 2 == 0:
        g = g * IntPoly((B, A, 0, 1))
    return _rescale(g, k)


def x_minpoly_of(x) -> IntPoly:
    """Defining polynomial of x over Q (rational or QuadElt)."""
    if isinstance(x, Fraction) or isinstance(x, int):
        return IntPoly.from_rationals([-Fraction(x), 1])
    return x.minpoly()


def _residue_table(E: WeierstrassCurve, g: list[Fraction], m: int) -> list[list[Fraction]]:
    """f_0..f_m reduced modulo g in Q[x] (same recurrence as the integer table)."""
    A, B = E.a4, E.a6

    def red(a):
        return q_rem(a, g) if len(a) >= len(g) else q_sub(a, [])

    def mul(a, b):
        return red(q_mul(a, b)) if a and b else []

    def pw(a, k):
        out = [Fraction(1)]
        for _ in range(k):
            out = mul(out, a)
        return out

    F = red([4 * B, 4 * A, Fraction(0), Fraction(4)])
    F2 = mul(F, F)
    f = [[], [Fraction(1)], [Fraction(1)],
         red([-A * A, 12 * B, 6 * A, Fraction(0), Fraction(3)]),
         red([2 * (-8 * B * B - A**3), -8 * A * B, -10 * A * A, 40 * B, 10 * A, Fraction(0), Fraction(2)])]
    for k in range(5, m + 1):
        n = k // 2
        if k % 2:
            left, right = mul(f[n + 2], pw(f[n], 3)), mul(f[n - 1], pw(f[n + 1], 3))
            if n % 2 == 0:
                left = mul(F2, left)
            else:
                right = mul(F2, right)
            val = q_sub(left, right)
        else:
            val = mul(f[n], q_sub(mul(f[n + 2], pw(f[n - 1], 2)), mul(f[n - 2], pw(f[n + 1], 2))))
        f.append(val)
    return f


def nontorsion_certificate(E: WeierstrassCurve, xpoly: IntPoly, m_max: int = 30) -> bool:
    """True when no root of ``xpoly`` is the x-coordinate of a point of order <= m_max.

    Equivalent to ``gcd(xpoly, torsion_polynomial(E, m)) = 1`` over Q for all
    m <= m_max; the torsion polynomials are only ever formed modulo ``xpoly``.
    """
    if not E.is_short:
        raise InputError("certificate needs a short model")
    if xpoly.degree < 1:
        raise InputError("constant polynomial")
    g = [Fraction(c) for c in xpoly.coeffs]
    table = _residue_table(E, g, m_max)
    cubic = q_sub([E.a6, E.a4, Fraction(0), Fraction(1)], [])
    if len(cubic) >= len(g):
        cubic = q_rem(cubic, g)
    for m in range(2, m_max + 1):
        r = table[m]
        if m % 2 == 0 and r:
            r = q_rem(q_mul(r, cubic), g) if cubic else []
        # a zero residue means xpoly divides the torsion polynomial
        if not r or len(q_gcd(g, r)) > 1:
            return False
    return True
