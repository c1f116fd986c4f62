"""Canonical heights: escape rates, local decompositions and pair sums."""

from .canonical import canonical_height, canonical_height_detail, height_difference_bound
from .escape import EscapeHeight, HomogMap, escape_height
from .local import decomposition, decomposition_height, local_height_arch, local_height_nonarch_E0
from .pairing import (LambdaSet, PairingSum, PreconditionError, elkies_check, hoehe1_check,
                      pairing_identity, pairing_sum)

__all__ = [
    "canonical_height", "canonical_height_detail", "height_difference_bound", "EscapeHeight",
    "HomogMap", "escape_height", "decomposition", "decomposition_height", "local_height_arch",
    "local_height_nonarch_E0", "LambdaSet", "PairingSum", "PreconditionError", "elkies_check",
    "hoehe1_check", "pairing_identity", "pairing_sum",
]
