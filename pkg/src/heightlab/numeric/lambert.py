"""Real Lambert W on the branches 0 and -1, and the root of a*x - b - log x."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .arith import InputError
from .real import RealApprox


class DomainError(InputError):
    pass


def _g(w, y):
    return w * mpmath.exp(w) - y


def _float_guess(branch: int, y: float):
    """Double-precision Halley solve, used only as a starting point."""
    near = 2 * (math.e * y + 1)
    if near < 0.25:
        q = math.sqrt(max(near, 0.0))
        w = (-1 + q - q * q / 3) if branch == 0 else (-1 - q - q * q / 3)
    elif branch == 0:
        w = y if y < 0 else math.log1p(y) * 0.8
    else:
        L1 = math.log(-y)
        w = L1 - math.log(-L1)
    for _ in range(30):
        ew = math.exp(w)
        f = w * ew - y
        fp = ew * (w + 1)
        if fp == 0:
            break
        fpp = ew * (w + 2)
        nw = w - f / (fp - fpp * f / (2 * fp))
        if not math.isfinite(nw):
            break
        if abs(nw - w) <= 1e-15 * max(1.0, abs(w)):
            return nw
        w = nw
    return w


def _initial_guess(branch: int, y):
    if float(y) != 0.0 and abs(float(y)) > 1e-300:
        try:
            return mpf(_float_guess(branch, float(y)))
        except (OverflowError, ValueError, ZeroDivisionError):
            pass
    e = mpmath.e
    near = 2 * (e * y + 1)
    if near < mpf("0.25"):
        q = mpmath.sqrt(max(near, mpf(0)))
        return (-1 + q - q * q / 3) if branch == 0 else (-1 - q - q * q / 3)
    if branch == 0:
        if y < 0:
            return y  # W_0(y) ~ y near zero
        return mpmath.log1p(y) * mpf("0.8")
    L1 = mpmath.log(-y)
    return L1 - mpmath.log(-L1)


def lambert_w(branch: int, y, tol=None) -> RealApprox:
    """Certified real Lambert W.

    Newton's method on ``w + log|w| = log|y|`` (or on ``w e^w = y`` for
    ``y >= 0``) kept inside a monotone bracket; the result's error bound is
    confirmed by a sign change of ``w e^w - y`` across it.
    """
    if branch not in (0, -1):
        raise DomainError("branch must be 0 or -1")
    y = mpf(y)
    prec = mpmath.mp.prec
    tol = mpf(2) ** (8 - prec) if tol is None else mpf(tol)
    inv_e = -mpmath.exp(-1)
    slack = mpf(2) ** (6 - prec)
    if y < inv_e:
        if y < inv_e - slack:
            raise DomainError(f"y = {mpmath.nstr(y, 10)} < -1/e")
        y = inv_e
    if branch == -1 and y >= 0:
        raise DomainError("branch -1 needs -1/e <= y < 0")
    if y == 0:
        return RealApprox(0, 0)
    if y == inv_e:
        # within the clamping slack of the branch point: |W + 1| <= sqrt(2e * slack)
        return RealApprox(-1, mpmath.sqrt(2 * mpmath.e * slack) + tol)

    if branch == -1:
        lo, hi = mpf(-2), mpf(-1)
        while _g(lo, y) <= 0:
            lo *= 2
    elif y < 0:
        lo, hi = mpf(-1), mpf(0)
    else:
        lo, hi = mpf(0), mpmath.log1p(y) + 1

    w = _initial_guess(branch, y)
    if not lo < w < hi:
        w = (lo + hi) / 2
    increasing = branch == 0  # sign pattern of w e^w - y along the bracket
    for _ in range(200):
        if y < 0:
            phi = w + mpmath.log(-w) - mpmath.log(-y)
            dphi = 1 + 1 / w
        else:
            ew = mpmath.exp(w)
            phi = w * ew - y
            dphi = ew * (1 + w)
        step = phi / dphi if dphi != 0 else hi - lo
        if abs(step) <= max(tol / 4, abs(w) * mpf(2) ** (6 - prec)):
            w -= step
            break
        nw = w - step
        if not lo < nw < hi:
            nw = (lo + hi) / 2
        if (_g(nw, y) > 0) == increasing:
            hi = nw
        else:
            lo = nw
        w = nw
        if hi - lo <= tol:
            break

    delta = max(tol / 2, abs(w) * mpf(2) ** (10 - prec))
    for _ in range(60):
        a, b = _g(w - delta, y), _g(w + delta, y)
        if (a <= 0 <= b) or (b <= 0 <= a):
            return RealApprox(w, delta)
        delta *= 2
    raise ArithmeticError("lambert_w failed to certify a root")


@dataclass(frozen=True)
class Threshold:
    a: mpf
    b: mpf
    root: RealApprox
    lower: mpf
    upper: mpf

    def r(self, x):
        x = mpf(x)
        return self.a * x - self.b - mpmath.log(x)


def positivity_threshold(a, b) -> Threshold:
    """Largest root of r(x) = a x - b - log x, with its a-priori bracket.

    For b >= a > 0 the root is ``-(1/a) W_{-1}(-a e^{-b})`` and r is positive
    to the right of it; it lies strictly between 5/8 and
    ``(8/(5a)) (log(1/a) + b)``.
    """
    a, b = mpf(a), mpf(b)
    if not a > 0:
        raise InputError("a must be positive")
    if b < a:
        raise InputError("b must be at least a")
    w = lambert_w(-1, -a * mpmath.exp(-b))
    root = RealApprox(-w.value / a, w.abs_error / a)
    upper = 8 / (5 * a) * (mpmath.log(1 / a) + b)
    return Threshold(a=a, b=b, root=root, lower=mpf(5) / 8, upper=upper)
