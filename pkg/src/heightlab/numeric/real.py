"""Real numbers with explicit absolute error bounds.

A :class:`RealApprox` stands for the closed interval
``[value - abs_error, value + abs_error]``.  Arithmetic widens the bound
conservatively, including a rounding allowance for the working precision.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

DEFAULT_PRECISION = 128
_precision = [int(os.environ.get("HEIGHTLAB_PRECISION", DEFAULT_PRECISION))]


def working_precision() -> int:
    return _precision[0]


def set_working_precision(bits: int) -> None:
    if bits < 64:
        raise ValueError("precision must be at least 64 bits")
    _precision[0] = int(bits)
    mpmath.mp.prec = int(bits)


@contextmanager
def precision(bits: int):
    """Temporarily switch the working precision (also mpmath's)."""
    old = _precision[0]
    set_working_precision(bits)
    try:
        yield
    finally:
        set_working_precision(old)


mpmath.mp.prec = _precision[0]


def _ulp(x) -> mpf:
    # rounding slack for one operation at the working precision
    return abs(mpf(x)) * mpf(2) ** (4 - mpmath.mp.prec) + mpf(2) ** (-mpmath.mp.prec * 2)


def _to_mpf(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


@dataclass(frozen=True)
class RealApprox:
    value: mpf
    abs_error: mpf = mpf(0)

    def __post_init__(self):
        object.__setattr__(self, "value", _to_mpf(self.value))
        err = _to_mpf(self.abs_error)
        if err < 0 or not mpmath.isfinite(err):
            raise ValueError("abs_error must be finite and non-negative")
        object.__setattr__(self, "abs_error", err)

    @classmethod
    def exact(cls, x) -> "RealApprox":
        v = _to_mpf(x)
        exact = isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
        return cls(v, mpf(0) if exact else _ulp(v))

    @classmethod
    def from_interval(cls, lo, hi) -> "RealApprox":
        lo, hi = _to_mpf(lo), _to_mpf(hi)
        if hi < lo:
            lo, hi = hi, lo
        mid = (lo + hi) / 2
        return cls(mid, (hi - lo) / 2 + _ulp(mid))

    @staticmethod
    def _coerce(other) -> "RealApprox":
        if isinstance(other, RealApprox):
            return other
        return RealApprox.exact(other)

    @property
    def lo(self) -> mpf:
        return self.value - self.abs_error

    @property
    def hi(self) -> mpf:
        return self.value + self.abs_error

    def __add__(self, other):
        o = self._coerce(other)
        v = self.value + o.value
        return RealApprox(v, self.abs_error + o.abs_error + _ulp(v))

    __radd__ = __add__

    def __neg__(self):
        return RealApprox(-self.value, self.abs_error)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        v = self.value * o.value
        err = (abs(self.value) * o.abs_error + abs(o.value) * self.abs_error
               + self.abs_error * o.abs_error)
        return RealApprox(v, err + _ulp(v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if abs(o.value) <= o.abs_error:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / o.value
        denom_lo = abs(o.value) - o.abs_error
        err = (self.abs_error + abs(v) * o.abs_error) / denom_lo
        return RealApprox(v, err + _ulp(v))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __float__(self):
        return float(self.value)

    def contains(self, x) -> bool:
        x = _to_mpf(x)
        return self.lo <= x <= self.hi

    def close_to(self, other, tol) -> bool:
        o = self._coerce(other)
        return abs(self.value - o.value) <= _to_mpf(tol) + self.abs_error + o.abs_error

    def certainly_positive(self) -> bool:
        return self.lo > 0

    def __repr__(self):
        return f"RealApprox({mpmath.nstr(self.value, 20)} ± {mpmath.nstr(self.abs_error, 3)})"

    def to_json(self) -> list[str]:
        return [mpmath.nstr(self.value, 30), mpmath.nstr(self.abs_error, 6)]


def rlog(x) -> RealApprox:
    """Natural log of an exact positive rational or of a RealApprox."""
    if isinstance(x, RealApprox):
        if x.lo <= 0:
            raise ValueError("log of an interval reaching zero")
        v = mpmath.log(x.value)
        return RealApprox(v, x.abs_error / x.lo + _ulp(v))
    if isinstance(x, Fraction):
        v = mpmath.log(x.numerator) - mpmath.log(x.denominator)
    else:
        v = mpmath.log(x)
    return RealApprox(v, _ulp(v) * 4)


def tolerance(*operands: RealApprox, floor=mpf("1e-9")) -> mpf:
    """Comparison tolerance: max(floor, 3 * sum of operand error bounds)."""
    return max(mpf(floor), 3 * sum((o.abs_error for o in operands), mpf(0)))
