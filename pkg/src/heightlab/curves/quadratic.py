"""Elements a + b*sqrt(D) of a single quadratic field Q(sqrt(D))."""

from __future__ import annotations

from fractions import Fraction

from ..numeric.arith import InputError, as_fraction, is_squarefree, squarefree_decomposition
from ..numeric.poly import IntPoly


class MixedFieldError(InputError):
    pass


class QuadElt:
    """a + b*sqrt(D) with D squarefree; D = 1 marks a rational element."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b=0, D: int = 1):
        a, b = as_fraction(a), as_fraction(b)
        if D == 0:
            raise InputError("D must be nonzero")
        if D != 1 and not is_squarefree(D):
            raise InputError(f"D = {D} is not squarefree")
        if b == 0 or D == 1:
            a, b, D = (a + b, Fraction(0), 1) if D == 1 else (a, Fraction(0), 1)
        self.a, self.b, self.D = a, b, D

    @classmethod
    def sqrt(cls, x) -> "QuadElt":
        """The square root of a rational, normalised to k*sqrt(D) with D squarefree."""
        x = as_fraction(x)
        if x == 0:
            return cls(0)
        num = x.numerator * x.denominator
        D, k = squarefree_decomposition(num)
        coeff = Fraction(k, x.denominator)
        if D == 1:
            return cls(coeff)
        return cls(0, coeff, D)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    def _common(self, other) -> tuple["QuadElt", int]:
        if not isinstance(other, QuadElt):
            other = QuadElt(as_fraction(other))
        if self.D == 1:
            return other, other.D
        if other.D == 1 or other.D == self.D:
            return other, self.D
        raise MixedFieldError(f"cannot combine Q(sqrt({self.D})) with Q(sqrt({other.D}))")

    def __add__(self, other):
        o, D = self._common(other)
        return QuadElt(self.a + o.a, self.b + o.b, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o, D = self._common(other)
        return QuadElt(self.a - o.a, self.b - o.b, D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o, D = self._common(other)
        return QuadElt(self.a * o.a + D * self.b * o.b, self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElt":
        return QuadElt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def __truediv__(self, other):
        o, D = self._common(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(D))")
        return self * QuadElt(o.a / n, -o.b / n, D)

    def __rtruediv__(self, other):
        return QuadElt(as_fraction(other)) / self

    def __pow__(self, k: int):
        out = QuadElt(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadElt):
            return NotImplemented
        return self.a == other.a and self.b == other.b and (self.b == 0 or self.D == other.D)

    def __hash__(self):
        return hash((self.a, self.b, self.D if self.b else 1))

    def minpoly(self) -> IntPoly:
        if self.b == 0:
            return IntPoly.from_rationals([-self.a, 1])
        return IntPoly.from_rationals([self.norm(), -2 * self.a, 1])

    def __float__(self):
        if self.D < 0 and self.b:
            raise ValueError("not a real number")
        return float(self.a) + float(self.b) * (self.D ** 0.5)

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"{self.a} + {self.b}*sqrt({self.D})"


def field_of(*values) -> int:
    """The common D of the given coordinates (1 if all rational)."""
    D = 1
    for v in values:
        if isinstance(v, QuadElt) and v.b:
            if D not in (1, v.D):
                raise MixedFieldError(f"mixed fields sqrt({D}) and sqrt({v.D})")
            D = v.D
    return D
