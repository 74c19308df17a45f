"""Spherical-cap geometry of the bulged lens membrane.

Relates the cap diameter D, sag height h, radius of curvature R, contact angle theta and
volume V. Lengths are in mm, volumes in mm3 (1 ul == 1 mm3) and angles in radians. Only the
sub-hemispherical regime 0 < h <= D/2 (0 < theta <= 90 degrees) is supported.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .exceptions import LensDomainError
from .numerics import bisect_root

logger = logging.getLogger(f"liquilens.{__name__}")

HALF_PI = math.pi / 2
# volumes this close above the hemisphere volume are input rounding, not a bigger cap
HEMISPHERE_RTOL = 1e-5


@dataclass(frozen=True)
class CapState:
    """A fully resolved spherical cap."""

    diameter: float
    sag: float
    radius: float
    contact_angle: float
    volume: float

    @property
    def contact_angle_deg(self) -> float:
        """Return the contact angle in degrees."""
        return math.degrees(self.contact_angle)


@dataclass(frozen=True)
class AngleDecomposition:
    """The auxiliary angles of the rim construction, all in radians.

    alpha is the angle of the radius to the rim above the rim plane, beta the angle of the
    chord from rim to apex, gamma = 90 deg - alpha - beta and theta = gamma + beta.
    """

    alpha: float
    beta: float
    gamma: float
    theta: float


def _check_diameter(diameter: float) -> None:
    if not diameter > 0:
        raise LensDomainError(f"diameter must be positive, got {diameter}")


def _check_cap(diameter: float, sag: float) -> None:
    _check_diameter(diameter)
    if not sag > 0:
        raise LensDomainError(f"sag must be positive, got {sag} (a flat film is not a lens)")
    if sag > diameter / 2:
        raise LensDomainError(f"sag {sag} exceeds hemispherical regime for diameter {diameter}")


def _check_angle(theta: float) -> None:
    if not 0 < theta <= HALF_PI:
        raise LensDomainError(f"contact angle {math.degrees(theta)} deg is outside (0, 90] deg")


def hemisphere_volume(diameter: float) -> float:
    """Return the volume of the hemispherical cap, the largest volume of the regime."""
    _check_diameter(diameter)
    return 2 * math.pi / 3 * (diameter / 2) ** 3


def radius_from_sag(diameter: float, sag: float) -> float:
    """Return the radius of curvature of a cap with the given diameter and sag."""
    _check_cap(diameter, sag)
    return (diameter**2 + 4 * sag**2) / (8 * sag)


def angle_decomposition(diameter: float, sag: float) -> AngleDecomposition:
    """Return the auxiliary angles used to derive the contact angle from the cap profile."""
    radius = radius_from_sag(diameter, sag)
    half = diameter / 2
    alpha = math.atan((radius - sag) / half)
    beta = math.atan(sag / half)
    gamma = HALF_PI - alpha - beta
    return AngleDecomposition(alpha=alpha, beta=beta, gamma=gamma, theta=gamma + beta)


def contact_angle_from_sag(diameter: float, sag: float) -> float:
    """Return the contact angle of a cap.

    Evaluates theta = 90 deg - atan((2R - 2h) / D) as the complementary atan2, which keeps full
    relative precision for flat caps. The expression is algebraically equal to 2 * atan(2h / D).
    """
    radius = radius_from_sag(diameter, sag)
    return math.atan2(diameter, 2 * radius - 2 * sag)


def sag_from_contact_angle(diameter: float, theta: float) -> float:
    """Return the sag of the cap with the given contact angle."""
    _check_diameter(diameter)
    _check_angle(theta)
    return diameter / 2 * math.tan(theta / 2)


def radius_from_contact_angle(diameter: float, theta: float) -> float:
    """Return the radius of curvature from the rim relation D/2 = R sin(theta)."""
    _check_diameter(diameter)
    _check_angle(theta)
    return diameter / 2 / math.sin(theta)


def cap_volume_from_angle(radius: float, theta: float) -> float:
    """Return the cap volume pi R^3 / 3 (2 + cos theta)(1 - cos theta)^2.

    1 - cos(theta) is evaluated as 2 sin^2(theta / 2) to avoid cancellation for flat caps.
    """
    if not radius > 0:
        raise LensDomainError(f"radius must be positive, got {radius}")
    _check_angle(theta)
    one_minus_cos = 2 * math.sin(theta / 2) ** 2
    return math.pi * radius**3 / 3 * (2 + math.cos(theta)) * one_minus_cos**2


def cap_volume_from_sag(diameter: float, sag: float) -> float:
    """Return the cap volume pi h (3 (D/2)^2 + h^2) / 6."""
    _check_cap(diameter, sag)
    return math.pi * sag * (3 * (diameter / 2) ** 2 + sag**2) / 6


def sag_from_volume(diameter: float, volume: float) -> float:
    """Return the sag of the cap holding the given volume.

    Solves the monotone cubic h (3 (D/2)^2 + h^2) = 6 V / pi by bisection on (0, D/2].
    """
    if not volume > 0:
        raise LensDomainError(f"volume must be positive, got {volume} (a flat film is not a lens)")
    limit = hemisphere_volume(diameter)
    if volume > limit * (1 + HEMISPHERE_RTOL):
        raise LensDomainError(
            f"volume {volume} mm3 exceeds hemispherical regime (max {limit:.6g} mm3 for diameter {diameter} mm)"
        )
    half = diameter / 2
    if volume >= limit:
        return half
    target = 6 * volume / math.pi
    a2 = 3 * half**2
    # scale by the target so the residual is relative
    return bisect_root(lambda h: h * (a2 + h * h) / target - 1.0, 0.0, half)


def resolve_cap(
    diameter: float,
    *,
    sag: float | None = None,
    contact_angle: float | None = None,
    volume: float | None = None,
) -> CapState:
    """Resolve a full CapState from the diameter and exactly one of sag, contact angle or volume."""
    if len([v for v in (sag, contact_angle, volume) if v is not None]) != 1:
        msg = "exactly one of sag, contact_angle or volume must be given"
        raise TypeError(msg)
    if contact_angle is not None:
        h = sag_from_contact_angle(diameter, contact_angle)
        return CapState(
            diameter=diameter,
            sag=h,
            radius=radius_from_contact_angle(diameter, contact_angle),
            contact_angle=contact_angle,
            volume=cap_volume_from_sag(diameter, h),
        )
    if volume is not None:
        h = sag_from_volume(diameter, volume)
        logger.debug(f"Volume {volume} mm3 on diameter {diameter} mm resolved to sag {h} mm")
        return CapState(
            diameter=diameter,
            sag=h,
            radius=radius_from_sag(diameter, h),
            contact_angle=contact_angle_from_sag(diameter, h),
            volume=cap_volume_from_sag(diameter, h),
        )
    assert sag is not None  # noqa: S101
    return CapState(
        diameter=diameter,
        sag=sag,
        radius=radius_from_sag(diameter, sag),
        contact_angle=contact_angle_from_sag(diameter, sag),
        volume=cap_volume_from_sag(diameter, sag),
    )
