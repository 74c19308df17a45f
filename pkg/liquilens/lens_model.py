"""Thin-lens optics of the liquid cap.

Light travels left to right and meets the curved cap first; its radius is positive. The
plane back face has infinite radius, so the lensmaker equation reduces to f = R / (n - 1).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .cap_geometry import CapState, resolve_cap
from .exceptions import LensDomainError, UnreachableFocalError

logger = logging.getLogger(f"liquilens.{__name__}")

WATER_INDEX = 1.33
# relative slack when a focal length sits exactly on the hemisphere bound
HEMISPHERE_FOCAL_RTOL = 1e-12


class Afocal(enum.Enum):
    """Distinguished lensmaker result for a system with zero optical power."""

    AFOCAL = "afocal"


AFOCAL = Afocal.AFOCAL


@dataclass(frozen=True)
class LensConfig:
    """Optical parameters of the liquid lens.

    center_thickness is only used by the ray tracer; None means "use the cap sag".
    """

    diameter: float = 2.0
    index: float = WATER_INDEX
    center_thickness: float | None = None

    def __post_init__(self) -> None:
        """Validate the configuration."""
        if not self.diameter > 0:
            raise LensDomainError(f"diameter must be positive, got {self.diameter}")
        _check_index(self.index)
        if self.center_thickness is not None and not self.center_thickness >= 0:
            raise LensDomainError(f"center thickness must not be negative, got {self.center_thickness}")


@dataclass(frozen=True)
class CurvePoint:
    """One sample of the theoretical V-f and V-theta curves."""

    volume: float
    contact_angle: float  # degrees
    focal_length: float
    radius: float
    sag: float

    @classmethod
    def from_cap(cls, cap: CapState, focal_length: float) -> CurvePoint:
        """Build a curve point from a resolved cap and its focal length."""
        return cls(
            volume=cap.volume,
            contact_angle=cap.contact_angle_deg,
            focal_length=focal_length,
            radius=cap.radius,
            sag=cap.sag,
        )


def _check_index(index: float) -> None:
    if not index > 1:
        raise LensDomainError(f"refractive index must be greater than 1, got {index}")


def lensmaker(index: float, r1: float, r2: float) -> float | Afocal:
    """Return the thin-lens focal length from 1/f = (n - 1)(1/R1 - 1/R2).

    Either radius may be math.inf for a plane surface. Zero power returns AFOCAL.
    """
    _check_index(index)
    if r1 == 0 or r2 == 0:
        raise LensDomainError("surface radii must be nonzero")
    curvature = 1 / r1 - 1 / r2
    if curvature == 0:
        return AFOCAL
    return 1 / ((index - 1) * curvature)


def plano_convex_focal(index: float, radius: float) -> float:
    """Return f = R / (n - 1) for the plano-convex cap."""
    if not radius > 0:
        raise LensDomainError(f"radius must be positive, got {radius}")
    focal = lensmaker(index, radius, math.inf)
    assert not isinstance(focal, Afocal)  # noqa: S101
    return focal


def radius_for_focal(index: float, focal: float) -> float:
    """Return the cap radius R = f (n - 1) giving the requested focal length."""
    _check_index(index)
    if not focal > 0:
        raise LensDomainError(f"focal length must be positive, got {focal}")
    return focal * (index - 1)


def hemisphere_focal(config: LensConfig) -> float:
    """Return the shortest reachable focal length, reached by the hemispherical cap."""
    return config.diameter / (2 * (config.index - 1))


def volume_to_focal(config: LensConfig, volume: float) -> float:
    """Return the focal length of the cap holding the given volume."""
    cap = resolve_cap(config.diameter, volume=volume)
    return plano_convex_focal(config.index, cap.radius)


def focal_to_cap(config: LensConfig, focal: float) -> CapState:
    """Return the cap that gives the requested focal length.

    Solved in closed form: R = f (n - 1), then h = (D/2)^2 / (R + sqrt(R^2 - (D/2)^2)).
    """
    radius = radius_for_focal(config.index, focal)
    half = config.diameter / 2
    bound = hemisphere_focal(config)
    if radius < half * (1 - HEMISPHERE_FOCAL_RTOL):
        raise UnreachableFocalError(
            f"unreachable focal length {focal} mm: the shortest focal length for diameter "
            f"{config.diameter} mm and index {config.index} is {bound:.6g} mm"
        )
    radius = max(radius, half)
    sag = half**2 / (radius + math.sqrt(radius**2 - half**2))
    cap = resolve_cap(config.diameter, sag=min(sag, half))
    logger.debug(f"Focal length {focal} mm needs sag {cap.sag} mm, volume {cap.volume} mm3")
    return cap


def focal_to_volume(config: LensConfig, focal: float) -> float:
    """Return the cap volume that gives the requested focal length."""
    return focal_to_cap(config, focal).volume


def focal_to_contact_angle(config: LensConfig, focal: float) -> float:
    """Return the contact angle (radians) of the cap that gives the requested focal length."""
    return focal_to_cap(config, focal).contact_angle


def theoretical_curve(config: LensConfig, f_min: float, f_max: float, steps: int) -> list[CurvePoint]:
    """Sample the V-f and V-theta relations at uniformly spaced focal lengths."""
    if steps < 2:  # noqa: PLR2004
        raise LensDomainError(f"a curve needs at least 2 steps, got {steps}")
    if not f_min < f_max:
        raise LensDomainError(f"f_min {f_min} must be smaller than f_max {f_max}")
    bound = hemisphere_focal(config)
    if not f_min > bound:
        raise UnreachableFocalError(
            f"unreachable focal length {f_min} mm: curve must start above the hemisphere bound {bound:.6g} mm"
        )
    points = []
    for focal in np.linspace(f_min, f_max, steps):
        cap = focal_to_cap(config, float(focal))
        points.append(CurvePoint.from_cap(cap, float(focal)))
    logger.info(f"Generated {len(points)} curve points between {f_min} and {f_max} mm")
    return points


def volume_curve(config: LensConfig, v_min: float, v_max: float, steps: int) -> list[CurvePoint]:
    """Sample the V-f and V-theta relations at uniformly spaced volumes."""
    if steps < 2:  # noqa: PLR2004
        raise LensDomainError(f"a curve needs at least 2 steps, got {steps}")
    if not 0 < v_min < v_max:
        raise LensDomainError(f"need 0 < v_min < v_max, got {v_min} and {v_max}")
    points = []
    for volume in np.linspace(v_min, v_max, steps):
        cap = resolve_cap(config.diameter, volume=float(volume))
        points.append(CurvePoint.from_cap(cap, plano_convex_focal(config.index, cap.radius)))
    return points

