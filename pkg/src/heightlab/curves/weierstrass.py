"""Weierstrass models over Q, their invariants and coordinate changes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from ..numeric.arith import InputError, as_fraction, factor, fmt_q, ord_p
from ..numeric.mahler import weil_height_rational
from ..numeric.real import RealApprox

# (u, r, s, t): x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
Transform = tuple[Fraction, Fraction, Fraction, Fraction]
IDENTITY: Transform = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))


def compose(first: Transform, second: Transform) -> Transform:
    """The transform equal to applying ``first`` and then ``second``."""
    u1, r1, s1, t1 = first
    u2, r2, s2, t2 = second
    return (u1 * u2, r1 + u1 * u1 * r2, s1 + u1 * s2, t1 + u1**3 * t2 + s1 * u1 * u1 * r2)


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.disc == 0:
            raise InputError(f"singular curve {self.ainvs_str()}")

    # --- constructors ------------------------------------------------------

    @classmethod
    def short(cls, A, B, label=None) -> "WeierstrassCurve":
        return cls(0, 0, 0, A, B, label)

    @classmethod
    def parse(cls, text: str, label=None) -> "WeierstrassCurve":
        """Accepts ``"A,B"`` (short form) or ``"a1,a2,a3,a4,a6"``."""
        parts = [s for s in text.replace(" ", "").strip("[]").split(",")]
        vals = [as_fraction(s) for s in parts]
        if len(vals) == 2:
            return cls.short(*vals, label=label)
        if len(vals) == 5:
            return cls(*vals, label=label)
        raise InputError(f"expected 2 or 5 coefficients, got {len(vals)}")

    @classmethod
    def from_record(cls, record: dict) -> "WeierstrassCurve":
        a = record.get("a")
        if not isinstance(a, list) or len(a) != 5:
            raise InputError("record needs 'a': five rational strings")
        return cls(*(as_fraction(str(v)) for v in a), label=record.get("label"))

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def ainvs_str(self) -> str:
        return ",".join(fmt_q(a) for a in self.ainvs)

    def to_record(self) -> dict:
        rec = {"a": [fmt_q(a) for a in self.ainvs]}
        if self.label:
            rec["label"] = self.label
        return rec

    # --- invariants --------------------------------------------------------

    @cached_property
    def b2(self) -> Fraction:
        return self.a1 * self.a1 + 4 * self.a2

    @cached_property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> Fraction:
        return self.a3 * self.a3 + 4 * self.a6

    @cached_property
    def b8(self) -> Fraction:
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @cached_property
    def c4(self) -> Fraction:
        return self.b2 * self.b2 - 24 * self.b4

    @cached_property
    def c6(self) -> Fraction:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def disc(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @cached_property
    def j(self) -> Fraction:
        return self.c4**3 / self.disc

    @cached_property
    def h_j(self) -> RealApprox:
        return weil_height_rational(self.j)

    def invariants(self) -> dict:
        return {"c4": self.c4, "c6": self.c6, "disc": self.disc, "j": self.j, "h_j": self.h_j}

    @property
    def is_short(self) -> bool:
        return self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    @property
    def A(self) -> Fraction:
        self._require_short()
        return self.a4

    @property
    def B(self) -> Fraction:
        self._require_short()
        return self.a6

    def _require_short(self):
        if not self.is_short:
            raise InputError("operation needs a short Weierstrass model")

    def is_integral(self, p: int | None = None) -> bool:
        if p is None:
            return all(a.denominator == 1 for a in self.ainvs)
        return all(a.denominator % p for a in self.ainvs)

    def bad_primes(self) -> list[int]:
        """Primes dividing the numerator or denominator of the discriminant of this model."""
        d = self.disc
        return sorted(set(factor(d.numerator)) | set(factor(d.denominator)))

    # --- points ------------------------------------------------------------

    def contains_xy(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.ainvs
        lhs = y * y + a1 * x * y + a3 * y
        rhs = x * x * x + a2 * x * x + a4 * x + a6
        return lhs - rhs == 0

    def rhs_quadratic(self, x):
        """(b, c) with y^2 + b y - c = 0 at the given x."""
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * x + a3, x * x * x + a2 * x * x + a4 * x + a6

    # --- coordinate changes ------------------------------------------------

    def change(self, T: Transform) -> "WeierstrassCurve":
        """The model in coordinates (x', y') with x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        u, r, s, t = (as_fraction(v) for v in T)
        if u == 0:
            raise InputError("u must be nonzero")
        a1, a2, a3, a4, a6 = self.ainvs
        n1 = a1 + 2 * s
        n2 = a2 - s * a1 + 3 * r - s * s
        n3 = a3 + r * a1 + 2 * t
        n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
        n6 = a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1
        return WeierstrassCurve(n1 / u, n2 / u**2, n3 / u**3, n4 / u**4, n6 / u**6, self.label)

    def short_transform(self) -> Transform:
        """Transform to a short model y^2 = x^3 + A x + B with A, B integers."""
        r = -self.b2 / 12
        s = -self.a1 / 2
        t = -(self.a3 + r * self.a1) / 2
        A = -self.c4 / 48
        B = -self.c6 / 864
        k = _integralizing_scale({4: A, 6: B})
        return compose((Fraction(1), r, s, t), (Fraction(1, k), Fraction(0), Fraction(0), Fraction(0)))

    def short_integral_model(self) -> tuple["WeierstrassCurve", Transform]:
        T = self.short_transform()
        return self.change(T), T

    def integral_transform(self) -> Transform:
        k = _integralizing_scale({1: self.a1, 2: self.a2, 3: self.a3, 4: self.a4, 6: self.a6})
        return (Fraction(1, k), Fraction(0), Fraction(0), Fraction(0))

    def integral_model(self) -> tuple["WeierstrassCurve", Transform]:
        T = self.integral_transform()
        return self.change(T), T

    def __str__(self):
        a1, a2, a3, a4, a6 = self.ainvs
        left = "y^2"
        if a1:
            left += f" + ({fmt_q(a1)})xy"
        if a3:
            left += f" + ({fmt_q(a3)})y"
        right = "x^3"
        for c, mon in ((a2, "x^2"), (a4, "x"), (a6, "")):
            if c:
                right += f" + ({fmt_q(c)}){mon}"
        return f"{left} = {right}"


def _integralizing_scale(weighted: dict[int, Fraction]) -> int:
    """Smallest k > 0 with c * k**w integral for every (w, c)."""
    k = 1
    primes = set()
    for c in weighted.values():
        primes |= set(factor(c.denominator))
    for q in primes:
        e = 0
        for w, c in weighted.items():
            if c:
                v = -ord_p(c, q)
                if v > 0:
                    e = max(e, -(-v // w))
        k *= q**e
    return k


def transform_point(T: Transform, x, y):
    """Image of (x, y) under the coordinate change T (old -> new coordinates)."""
    u, r, s, t = T
    xn = (x - r) / (u * u)
    yn = (y - s * (x - r) - t) / u**3
    return xn, yn


def untransform_point(T: Transform, x, y):
    """Inverse of :func:`transform_point`."""
    u, r, s, t = T
    return u * u * x + r, u**3 * y + s * u * u * x + t


def read_curves(path) -> Iterator[WeierstrassCurve]:
    """Curves from a JSON-lines file of ``{"label": ..., "a": [...]}`` records."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from exc
            yield WeierstrassCurve.from_record(rec)
