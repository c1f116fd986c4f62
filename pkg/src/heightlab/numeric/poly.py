"""Univariate integer polynomials and the few F_p / Q[x] routines built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import InputError

_KRONECKER_MIN_DEGREE = 24


def _trim(cs: Sequence[int]) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _mul_naive(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # pack into one big integer, multiply, unpack with signed digits
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    shift = (2 * bound).bit_length() + 1
    base = 1 << shift
    half = base >> 1

    def pack(cs):
        n = 0
        for c in reversed(cs):
            n = (n << shift) + c
        return n

    prod = pack(a) * pack(b)
    out = []
    mask = base - 1
    for _ in range(len(a) + len(b) - 1):
        digit = prod & mask
        prod >>= shift
        if digit >= half:
            digit -= base
            prod += 1
        out.append(digit)
    return out


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients in ascending order of degree."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = _trim(int(c) for c in coeffs)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def from_rationals(cls, coeffs: Iterable[Fraction]) -> "IntPoly":
        """Clear denominators of a rational coefficient list and make primitive."""
        fs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        return cls(int(f * den) for f in fs).primitive()

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def is_zero(self) -> bool:
        return not self.coeffs

    def primitive(self) -> "IntPoly":
        g = self.content
        if g in (0, 1) and self.lead >= 0:
            return self
        sign = -1 if self.lead < 0 else 1
        return IntPoly(sign * c // g for c in self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly(())
        if min(len(a), len(b)) > _KRONECKER_MIN_DEGREE:
            return IntPoly(_mul_kronecker(a, b))
        return IntPoly(_mul_naive(a, b))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out, base = IntPoly((1,)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def homogeneous(self, X, Z, d: int | None = None):
        """Evaluate ``Z**d * self(X/Z)`` with ``d`` defaulting to the degree."""
        d = self.degree if d is None else d
        return homog(self.coeffs, X, Z, d)

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def scale_variable(self, a: Fraction) -> "IntPoly":
        """Primitive integer polynomial whose roots are ``root / a``, i.e. ``self(a x)``."""
        a = Fraction(a)
        return IntPoly.from_rationals(c * a**i for i, c in enumerate(self.coeffs))

    def mod(self, p: int) -> list[int]:
        return list(_trim(c % p for c in self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mon and abs(c) == 1:
                coef = "-" if c < 0 else "+"
                terms.append(f"{coef} {mon}")
            else:
                terms.append(f"{'-' if c < 0 else '+'} {abs(c)}{'*' + mon if mon else ''}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def homog(coeffs: Sequence[int], X, Z, d: int):
    """``Z**d * f(X/Z)`` for an ascending coefficient list."""
    return sum(c * X**i * Z ** (d - i) for i, c in enumerate(coeffs) if c)


# --- F_p[x], lists of residues in ascending order -------------------------

def fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = fp_trim(list(a))
    b = fp_trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        q = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - q * bi) % p
        fp_trim(a)
    return a


def fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = fp_trim(list(a)), fp_trim(list(b))
    while b:
        a, b = b, fp_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def fp_derivative(a: list[int], p: int) -> list[int]:
    return fp_trim([(i * c) % p for i, c in enumerate(a)][1:])


def squarefree_mod_p(g: IntPoly, p: int) -> bool:
    """True when ``g mod p`` keeps its degree and is separable over F_p."""
    if g.degree < 1:
        raise InputError("constant polynomial")
    gp = g.mod(p)
    if len(gp) - 1 != g.degree:
        return False
    return len(fp_gcd(gp, fp_derivative(gp, p), p)) == 1


# --- Q[x] helpers ----------------------------------------------------------

def q_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while b and b[-1] == 0:
        b.pop()
    while a and a[-1] == 0:
        a.pop()
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        while a and a[-1] == 0:
            a.pop()
    return q, a


def q_rem(a, b):
    return q_divmod(a, b)[1]


def q_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while b and b[-1] == 0:
        b.pop()
    while b:
        a, b = b, q_rem(a, b)
    while a and a[-1] == 0:
        a.pop()
    if a:
        a = [c / a[-1] for c in a]
    return a


def q_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def q_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return [Fraction(c) for c in out]


def q_gcdex(a, b):
    """Return ``(s, t)`` with ``s*a + t*b = 1`` for coprime ``a, b`` in Q[x]."""
    r0, r1 = [Fraction(c) for c in a], [Fraction(c) for c in b]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = q_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, q_sub(s0, q_mul(q, s1))
        t0, t1 = t1, q_sub(t0, q_mul(q, t1))
    if len(r0) != 1:
        raise InputError("polynomials are not coprime")
    c = r0[0]
    return [x / c for x in s0], [x / c for x in t0]
