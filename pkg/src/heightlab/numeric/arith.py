"""Exact rational helpers: parsing, p-adic valuations, squarefree parts."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime

# ord_p(0); compares greater than every integer and survives min/max.
INF = math.inf


class InputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class PrecisionError(ArithmeticError):
    """Raised when a requested accuracy cannot be reached within the caps."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {x!r}") from exc
    raise InputError(f"expected an exact rational, got {type(x).__name__}")


def require_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise InputError(f"{p!r} is not a prime")
    return p


def _ord_int(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p(x, p: int):
    """Exponent of the prime ``p`` in the rational ``x``; ``INF`` for zero."""
    require_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INF
    return _ord_int(x.numerator, p) - _ord_int(x.denominator, p)


@lru_cache(maxsize=4096)
def factor(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` (cached)."""
    return {int(q): int(e) for q, e in factorint(abs(n)).items()}


def prime_divisors(n: int) -> list[int]:
    return sorted(factor(n)) if n not in (0, 1, -1) else []


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n = s * k**2`` and ``s`` squarefree (sign kept in ``s``)."""
    if n == 0:
        raise InputError("zero has no squarefree part")
    s, k = (1 if n > 0 else -1), 1
    for q, e in factor(n).items():
        k *= q ** (e // 2)
        if e % 2:
            s *= q
    return s, k


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factor(n).values())


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    x = as_fraction(x)
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def lcm(*ns: int) -> int:
    out = 1
    for n in ns:
        out = out * n // math.gcd(out, n)
    return out


def fmt_q(x: Fraction) -> str:
    """Serialize a rational as ``"n/d"`` (``"n"`` when integral)."""
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
