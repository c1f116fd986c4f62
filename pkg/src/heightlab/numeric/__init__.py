"""Exact rationals, valuations, certified reals, heights of algebraic numbers, Lambert W."""

from .arith import (INF, InputError, PrecisionError, as_fraction, fmt_q, is_squarefree,
                    ord_p, prime_divisors, require_prime, squarefree_decomposition)
from .lambert import DomainError, Threshold, lambert_w, positivity_threshold
from .mahler import height_from_minpoly, weil_height_rational
from .poly import IntPoly, squarefree_mod_p
from .real import RealApprox, precision, set_working_precision, working_precision

__all__ = [
    "INF", "InputError", "PrecisionError", "DomainError", "as_fraction", "fmt_q",
    "is_squarefree", "ord_p", "prime_divisors", "require_prime", "squarefree_decomposition",
    "Threshold", "lambert_w", "positivity_threshold", "height_from_minpoly",
    "weil_height_rational", "IntPoly", "squarefree_mod_p", "RealApprox", "precision",
    "set_working_precision", "working_precision",
]
