"""Weil heights of rationals and of algebraic numbers given by a defining polynomial."""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mpf

from .arith import InputError, PrecisionError, as_fraction
from .poly import IntPoly
from .real import RealApprox, precision, rlog, working_precision


def weil_height_rational(x) -> RealApprox:
    """h(n/d) = log max(|n|, d) for the reduced fraction; h(0) = 0."""
    x = as_fraction(x)
    m = max(abs(x.numerator), x.denominator)
    if m == 1:
        return RealApprox(0, 0)
    return rlog(Fraction(m))


def _inclusion_radii(coeffs_desc, roots):
    """Radii n*|W_i| of the Weierstrass inclusion disks around approximate roots."""
    n = len(roots)
    lead = coeffs_desc[0]
    radii = []
    for i, z in enumerate(roots):
        val = mpmath.polyval(coeffs_desc, z)
        prod = mpf(1) * lead
        for j, w in enumerate(roots):
            if j != i:
                prod *= (z - w)
        if prod == 0:
            return None
        radii.append(n * abs(val / prod))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) <= radii[i] + radii[j]:
                return None
    return radii


def height_from_minpoly(f: IntPoly, eps=mpf("1e-12"), max_prec: int = 4096) -> RealApprox:
    """Height of any root of ``f`` via its Mahler measure.

    The roots are isolated with certified inclusion disks; since
    ``log+|z|`` is 1-Lipschitz the disk radii bound the error directly.
    Irreducibility of ``f`` is the caller's business.
    """
    if f.degree < 1:
        raise InputError("degree-0 polynomial has no roots")
    f = f.primitive()
    n = f.degree
    eps = mpf(eps)
    prec = max(working_precision(), 64 + 8 * n + int(-mpmath.log(eps, 2)) + 16)
    while prec <= max_prec:
        with precision(prec):
            desc = [mpf(c) for c in reversed(f.coeffs)]
            try:
                roots = mpmath.polyroots(desc, maxsteps=50 + 10 * n, extraprec=prec)
            except mpmath.libmp.NoConvergence:
                roots = None
            if n == 1:
                roots = [mpf(-f.coeffs[0]) / f.coeffs[1]]
            radii = _inclusion_radii(desc, roots) if roots is not None else None
            if radii is not None:
                total = mpmath.log(abs(mpf(f.lead)))
                for z in roots:
                    r = abs(z)
                    if r > 1:
                        total += mpmath.log(r)
                err = sum(radii, mpf(0)) / n + abs(total) * mpf(2) ** (8 - prec)
                value = total / n
                if err <= eps:
                    return RealApprox(+value, err)
        prec *= 2
    raise PrecisionError(f"could not isolate the roots of {f} to {eps}")
