"""Canonical heights on elliptic curves and Lattès maps over Q."""

__version__ = "0.1.0"

from .curves import CurvePoint, WeierstrassCurve  # noqa: E402
from .heights import canonical_height  # noqa: E402
from .numeric import RealApprox  # noqa: E402

__all__ = ["__version__", "CurvePoint", "WeierstrassCurve", "canonical_height", "RealApprox"]
