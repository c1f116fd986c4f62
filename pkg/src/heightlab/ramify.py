"""Ramification certificates at a prime, and points over fields unramified at p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves.divpoly import nontorsion_certificate, x_minpoly_of
from .curves.quadratic import QuadElt
from .curves.weierstrass import WeierstrassCurve
from .numeric.arith import InputError, is_squarefree, ord_p, rational_sqrt, require_prime, squarefree_decomposition
from .numeric.poly import IntPoly, squarefree_mod_p

UNRAMIFIED = "Unramified"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class RamCert:
    p: int
    subject: tuple          # ("QuadField", D) or ("poly", IntPoly)
    verdict: str            # Unramified, RamifiedWithIndex(e), Inconclusive
    index: int | None = None

    @property
    def unramified(self) -> bool:
        return self.verdict == UNRAMIFIED

    def to_json(self) -> dict:
        kind, obj = self.subject
        return {"p": self.p, "subject": [kind, obj if kind == "QuadField" else str(obj)],
                "verdict": self.verdict}


def _ramified(p, subject, e) -> RamCert:
    return RamCert(p, subject, f"RamifiedWithIndex({e})", e)


def quadratic_ramification(D: int, p: int) -> RamCert:
    """Exact ramification of p in Q(sqrt(D))."""
    require_prime(p)
    if D in (0, 1) or not is_squarefree(D):
        raise InputError(f"D = {D} must be squarefree and not 0 or 1")
    subject = ("QuadField", D)
    if p == 2:
        return RamCert(p, subject, UNRAMIFIED, 1) if D % 4 == 1 else _ramified(p, subject, 2)
    return _ramified(p, subject, 2) if D % p == 0 else RamCert(p, subject, UNRAMIFIED, 1)


def ramification_index_quadratic(D: int, p: int) -> int:
    """e of p in Q(sqrt(D)); D = 1 (the field Q) gives 1."""
    if D == 1:
        return 1
    return quadratic_ramification(D, p).index


def unramified_certificate(g: IntPoly, p: int) -> RamCert:
    """Unramified when g mod p keeps its degree and is separable; Inconclusive otherwise."""
    require_prime(p)
    if g.degree < 1:
        raise InputError("constant polynomial")
    g = g.primitive()
    subject = ("poly", g)
    if squarefree_mod_p(g, p):
        return RamCert(p, subject, UNRAMIFIED, 1)
    return RamCert(p, subject, INCONCLUSIVE)


def squarefree_part(x) -> int:
    """D squarefree with x = D * (rational)^2."""
    x = Fraction(x)
    if x == 0:
        raise InputError("zero has no squarefree part")
    return squarefree_decomposition(x.numerator * x.denominator)[0]


def biquadratic_index(D1: int, D2: int, p: int) -> int:
    """Ramification index of p in Q(sqrt(D1), sqrt(D2)).

    The inertia group is read off from how many of the (up to three)
    quadratic subfields are unramified: all, exactly one, or none.
    """
    D3 = squarefree_part(D1 * D2)
    if D1 == 1 or D2 == 1 or D3 == 1:
        # the compositum is (at most) quadratic
        D = D2 if D1 == 1 else D1
        return ramification_index_quadratic(D, p)
    unram = sum(1 for D in (D1, D2, D3) if ramification_index_quadratic(D, p) == 1)
    return {3: 1, 1: 2, 0: 4}[unram]


def compositum_subfield_bound(D1: int, D2: int, p: int) -> bool:
    """Unramified in Q(sqrt(D1)) and Q(sqrt(D2)) implies unramified in Q(sqrt(D1 D2))."""
    e1, e2 = ramification_index_quadratic(D1, p), ramification_index_quadratic(D2, p)
    if e1 == 1 and e2 == 1:
        return ramification_index_quadratic(squarefree_part(D1 * D2), p) == 1
    return True


def compositum_index_bound(D1: int, D2: int, p: int) -> bool:
    """e(Q(sqrt(D1), sqrt(D2))) <= e(Q(sqrt(D1))) * e(Q(sqrt(D2)))."""
    e = biquadratic_index(D1, D2, p)
    return e <= ramification_index_quadratic(D1, p) * ramification_index_quadratic(D2, p)


# --- points over unramified fields ---------------------------------------------

class SearchExhausted(ArithmeticError):
    pass


@dataclass(frozen=True)
class UnramifiedPoint:
    curve: WeierstrassCurve
    p: int
    case: str
    n: int
    x: object                   # Fraction or QuadElt; None when x is a root of x_poly
    x_poly: IntPoly             # defining polynomial of x over Q
    y: object                   # Fraction, QuadElt, or the integer y_n; None when y has degree 4
    y_poly: IntPoly             # defining polynomial of y over Q
    nontorsion: bool
    certificates: tuple         # RamCert for each field that needed one

    @property
    def unramified(self) -> bool:
        return all(c.unramified for c in self.certificates)

    def to_json(self) -> dict:
        return {"case": self.case, "n": self.n, "p": self.p,
                "x": None if self.x is None else str(self.x), "x_poly": str(self.x_poly),
                "y": None if self.y is None else str(self.y), "y_poly": str(self.y_poly),
                "nontorsion": self.nontorsion,
                "certificates": [c.to_json() for c in self.certificates]}


def _sqrt_cert(value: Fraction, p: int) -> tuple[object, IntPoly, RamCert]:
    """y = sqrt(value) with its defining polynomial and field certificate."""
    r = rational_sqrt(value)
    if r is not None:
        y = r
        return y, IntPoly.from_rationals([-r, 1]), RamCert(p, ("QuadField", 1), UNRAMIFIED, 1)
    y = QuadElt.sqrt(value)
    return y, IntPoly.from_rationals([-value, 0, 1]), quadratic_ramification(y.D, p)


def construct_unramified_point(E: WeierstrassCurve, p: int, n_cap: int = 50) -> UnramifiedPoint:
    """A non-torsion point over a field unramified at p, by the x_n / y_n case table."""
    require_prime(p)
    if not E.is_short:
        raise InputError("short model expected")
    A, B = E.a4, E.a6
    if ord_p(A, p) < 0 or ord_p(B, p) < 0:
        raise InputError("model must be integral at p")
    vA, vB = ord_p(A, p), ord_p(B, p)
    for n in range(1, n_cap + 1):
        if p == 2:
            yn = 2 * n if vB == 0 else 2 * n + 1
            fn = IntPoly.from_rationals([B - yn * yn, A, 0, 1])
            cert = unramified_certificate(fn, p)
            if not nontorsion_certificate(E, fn):
                continue
            return UnramifiedPoint(E, p, "p=2", n, None, fn, Fraction(yn), IntPoly.from_rationals([-yn, 1]),
                                   True, (cert,))
        if vB == 0:
            case, x = "v(B)=0", Fraction(n * p)
        elif vA == 0:
            case = "v(A)=0,v(B)>0"
            r = rational_sqrt(A)
            x = Fraction(n * p) + r if r is not None else Fraction(n * p) + QuadElt.sqrt(A)
        else:
            case, x = "v(A),v(B)>0", Fraction(n * p + 1)
        xpoly = x_minpoly_of(x)
        if not nontorsion_certificate(E, xpoly):
            continue
        if isinstance(x, Fraction):
            y, ypoly, ycert = _sqrt_cert(x**3 + A * x + B, p)
            if not E.contains_xy(x, y):
                raise ArithmeticError("constructed point is off the curve")
            return UnramifiedPoint(E, p, case, n, x, xpoly, y, ypoly, True, (ycert,))
        # x = np + sqrt(A): y^2 = c0 + c1 sqrt(A), y of degree 4
        y2 = x**3 + A * x + B
        if y2 != x * x * x + A * x + B:
            raise ArithmeticError("inconsistent arithmetic")
        c0, c1 = y2.a, y2.b
        ypoly = IntPoly.from_rationals([c0 * c0 - A * c1 * c1, 0, -2 * c0, 0, 1])
        xcert = quadratic_ramification(x.D, p)
        ycert = unramified_certificate(ypoly, p)
        return UnramifiedPoint(E, p, case, n, x, xpoly, None, ypoly, True, (xcert, ycert))
    raise SearchExhausted(f"no certified point with n <= {n_cap}")
