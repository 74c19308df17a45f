"""Exact meridional ray tracing through the plano-convex liquid lens.

Coordinates are (z, y): z along the optical axis in the direction of propagation, y the signed
height above the axis, both in mm. The curved cap has its vertex at z = 0 and its center of
curvature at z = R; the plane exit face sits at z = center_thickness. Incoming rays are
parallel to the axis (object at infinity).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .cap_geometry import resolve_cap
from .exceptions import (
    LensDomainError,
    NonConvergingRayError,
    RayMissError,
    RayTraceError,
    TotalInternalReflectionError,
)
from .lens_model import plano_convex_focal
from .numerics import golden_section_minimize

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from .lens_model import LensConfig

logger = logging.getLogger(f"liquilens.{__name__}")

DEFAULT_RAY_COUNT = 101
# the paraxial ray enters at this fraction of the curved radius
PARAXIAL_FRACTION = 1e-6
BEST_FOCUS_TOL = 1e-9  # mm
AIR_INDEX = 1.0
AXIAL = np.array([1.0, 0.0])


@dataclass(frozen=True)
class Prescription:
    """Sequential description of the lens: curved cap first, then a plane face."""

    curved_radius: float
    center_thickness: float
    index: float
    aperture_radius: float

    def __post_init__(self) -> None:
        """Validate the prescription."""
        if not self.curved_radius > 0:
            raise LensDomainError(f"curved radius must be positive, got {self.curved_radius}")
        if not self.aperture_radius > 0:
            raise LensDomainError(f"degenerate aperture radius {self.aperture_radius}")
        if not self.center_thickness >= 0:
            raise LensDomainError(f"center thickness must not be negative, got {self.center_thickness}")
        if not self.index > 1:
            raise LensDomainError(f"refractive index must be greater than 1, got {self.index}")
        if self.aperture_radius > self.curved_radius:
            raise LensDomainError(
                f"aperture radius {self.aperture_radius} exceeds curved radius {self.curved_radius}"
            )

    @property
    def exit_z(self) -> float:
        """Return the axial position of the plane exit face."""
        return self.center_thickness


@dataclass(frozen=True)
class MeridionalRay:
    """A ray in the meridional plane: a point (origin_z, height) and a unit direction (axial, transverse)."""

    height: float
    direction: tuple[float, float]
    origin_z: float

    def __post_init__(self) -> None:
        """Validate the direction."""
        axial, transverse = self.direction
        if not axial > 0:
            raise RayTraceError(f"ray must propagate forward, got direction {self.direction}")
        if abs(math.hypot(axial, transverse) - 1) > 1e-14:  # noqa: PLR2004
            raise RayTraceError(f"direction {self.direction} is not a unit vector")

    @classmethod
    def from_slope(cls, height: float, slope: float, origin_z: float = 0.0) -> MeridionalRay:
        """Build a forward ray from its height and dy/dz slope."""
        axial, transverse = _unit(np.array([1.0, slope]))
        return cls(height=height, direction=(axial, transverse), origin_z=origin_z)

    @property
    def slope(self) -> float:
        """Return dy/dz."""
        return self.direction[1] / self.direction[0]

    def height_at(self, z: float) -> float:
        """Return the ray height at the axial position z by linear propagation."""
        return self.height + (z - self.origin_z) * self.slope


@dataclass(frozen=True)
class SpotMetrics:
    """Focus positions and blur sizes of a traced fan. Lengths in mm."""

    paraxial_focus_z: float
    marginal_focus_z: float
    best_focus_z: float
    colc_diameter: float
    rms_radius_at_best: float
    rms_focus_z: float
    traced_rays: int
    dropped_rays: int = 0

    @property
    def colc_diameter_um(self) -> float:
        """Return the circle of least confusion diameter in micrometers."""
        return self.colc_diameter * 1000


@dataclass(frozen=True)
class VolumeSimulation:
    """Result of simulating the lens at one filling volume."""

    efl: float
    metrics: SpotMetrics
    prescription: Prescription
    pupil_radius: float
    warnings: list[str] = field(default_factory=list)


def _unit(vector: NDArray[np.float64]) -> NDArray[np.float64]:
    return vector / np.hypot(vector[0], vector[1])


def snell_refract(direction: ArrayLike, normal: ArrayLike, n_in: float, n_out: float) -> NDArray[np.float64]:
    """Refract a unit direction at an interface with the given unit normal.

    The normal may point to either side of the interface.
    """
    if n_in < 1 or n_out < 1:
        raise LensDomainError(f"refractive indices must be at least 1, got {n_in} and {n_out}")
    d = np.asarray(direction, dtype=np.float64)
    n = np.asarray(normal, dtype=np.float64)
    cos_i = -float(np.dot(d, n))
    if cos_i < 0:
        # make the normal face the incoming ray
        n = -n
        cos_i = -cos_i
    mu = n_in / n_out
    k = 1 - mu**2 * (1 - cos_i**2)
    if k < 0:
        sin_i = math.sqrt(max(0.0, 1 - cos_i**2))
        raise TotalInternalReflectionError(
            f"total internal reflection: {n_in} * sin({math.degrees(math.asin(min(sin_i, 1.0))):.4f} deg) / {n_out} > 1"
        )
    return _unit(mu * d + (mu * cos_i - math.sqrt(k)) * n)


def intersect_curved_surface(
    ray: MeridionalRay, vertex_z: float, radius: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Intersect a ray with the sphere of the given radius whose vertex sits on the axis at vertex_z.

    Returns the nearest forward intersection point (z, y) and the outward unit normal there.
    """
    center = np.array([vertex_z + radius, 0.0])
    origin = np.array([ray.origin_z, ray.height])
    d = np.array(ray.direction)
    oc = origin - center
    b = float(np.dot(d, oc))
    c = float(np.dot(oc, oc)) - radius**2
    disc = b * b - c
    if disc < 0:
        raise RayMissError(f"ray at height {ray.height} misses the surface of radius {radius}")
    root = math.sqrt(disc)
    if c > 0:
        if b >= 0:
            raise RayMissError(f"surface of radius {radius} lies behind the ray")
        # stable form of -b - root
        t = c / (root - b)
    else:
        t = root - b
    point = origin + t * d
    return point, (point - center) / radius


def trace(prescription: Prescription, entry_height: float) -> MeridionalRay:
    """Trace a ray entering parallel to the axis at entry_height.

    Returns the ray after the plane exit face, expressed at the exit-face plane. For entry
    heights above the physical cap the cap sag exceeds the thickness and the plane is reached
    by backward extension of the ray inside the medium, as a sequential trace does.
    """
    if abs(entry_height) > prescription.aperture_radius:
        raise RayMissError(
            f"entry height {entry_height} is outside the aperture radius {prescription.aperture_radius}"
        )
    incoming = MeridionalRay(height=entry_height, direction=(1.0, 0.0), origin_z=-prescription.curved_radius)
    point, normal = intersect_curved_surface(incoming, 0.0, prescription.curved_radius)
    inside = snell_refract(AXIAL, normal, AIR_INDEX, prescription.index)
    # propagate to the plane exit face
    s = (prescription.exit_z - point[0]) / inside[0]
    exit_height = float(point[1] + s * inside[1])
    outgoing = snell_refract(inside, AXIAL, prescription.index, AIR_INDEX)
    return MeridionalRay(
        height=exit_height,
        direction=(float(outgoing[0]), float(outgoing[1])),
        origin_z=prescription.exit_z,
    )


def axial_crossing(ray: MeridionalRay) -> float:
    """Return the axial position where the ray crosses the axis."""
    if ray.height == 0:
        return ray.origin_z
    if not ray.height * ray.direction[1] < 0:
        raise NonConvergingRayError(f"ray at height {ray.height} with slope {ray.slope} does not converge")
    return ray.origin_z - ray.height / ray.slope


def _richardson(f_full: float, f_half: float) -> float:
    # the leading aberration term goes with the square of the entry height
    return (4 * f_half - f_full) / 3


def _paraxial_height(prescription: Prescription) -> float:
    return min(PARAXIAL_FRACTION * prescription.curved_radius, prescription.aperture_radius)


def paraxial_efl(prescription: Prescription) -> float:
    """Return the effective focal length in the limit of vanishing entry height."""
    y = _paraxial_height(prescription)
    efls = []
    for h in (y, y / 2):
        slope = trace(prescription, h).slope
        if not slope < 0:
            raise NonConvergingRayError(f"ray at height {h} leaves the lens with slope {slope}")
        efls.append(h / -slope)
    return _richardson(*efls)


def paraxial_focus(prescription: Prescription) -> float:
    """Return the axial position of the paraxial focus."""
    y = _paraxial_height(prescription)
    crossings = [axial_crossing(trace(prescription, h)) for h in (y, y / 2)]
    return _richardson(*crossings)


def fan_heights(pupil_radius: float, ray_count: int = DEFAULT_RAY_COUNT) -> NDArray[np.float64]:
    """Return ray_count heights uniform in (0, pupil_radius], ending exactly at the marginal ray."""
    if not pupil_radius > 0:
        raise LensDomainError(f"degenerate aperture radius {pupil_radius}")
    if ray_count < 3:  # noqa: PLR2004
        raise LensDomainError(f"a ray fan needs at least 3 rays, got {ray_count}")
    return np.linspace(pupil_radius / ray_count, pupil_radius, ray_count)


def trace_fan(prescription: Prescription, heights: ArrayLike) -> tuple[list[MeridionalRay], int]:
    """Trace a fan of parallel rays. Returns the exit rays in fan order and the number of dropped rays.

    Rays that miss a surface or are totally internally reflected are dropped.
    """
    rays = []
    dropped = 0
    for height in np.asarray(heights, dtype=np.float64):
        try:
            rays.append(trace(prescription, float(height)))
        except (RayMissError, TotalInternalReflectionError) as e:
            logger.debug(f"Dropping ray at height {height}: {e}")
            dropped += 1
    return rays, dropped


def transverse_heights(rays: list[MeridionalRay], z: float) -> NDArray[np.float64]:
    """Return the heights of the rays at the axial position z."""
    heights = np.array([ray.height for ray in rays])
    z0 = np.array([ray.origin_z for ray in rays])
    slopes = np.array([ray.slope for ray in rays])
    return heights + (z - z0) * slopes


def best_focus(
    prescription: Prescription,
    ray_count: int = DEFAULT_RAY_COUNT,
    *,
    pupil_radius: float | None = None,
) -> SpotMetrics:
    """Find the circle of least confusion of a fan of parallel rays.

    The fan spans (0, pupil_radius], defaulting to the prescription aperture. The best focus is
    the plane minimizing the largest transverse ray height over the fan, searched between the
    marginal and paraxial crossings.
    """
    pupil = prescription.aperture_radius if pupil_radius is None else pupil_radius
    rays, dropped = trace_fan(prescription, fan_heights(pupil, ray_count))
    if len(rays) < 2:  # noqa: PLR2004
        raise RayMissError(f"only {len(rays)} of {ray_count} rays reached the image space")
    if dropped:
        logger.info(f"{dropped} of {ray_count} rays missed the lens and were dropped from the fan")

    paraxial_z = paraxial_focus(prescription)
    marginal_z = axial_crossing(rays[-1])
    lo, hi = min(marginal_z, paraxial_z), max(marginal_z, paraxial_z)

    def blur(z: float) -> float:
        return float(np.max(np.abs(transverse_heights(rays, z))))

    best_z, max_height = golden_section_minimize(blur, lo, hi, tol=BEST_FOCUS_TOL)

    # the mean squared height is quadratic in z, its minimum has a closed form
    heights = transverse_heights(rays, prescription.exit_z)
    slopes = np.array([ray.slope for ray in rays])
    rms_z = prescription.exit_z - float(np.dot(heights, slopes) / np.dot(slopes, slopes))
    rms = float(np.sqrt(np.mean(transverse_heights(rays, rms_z) ** 2)))

    metrics = SpotMetrics(
        paraxial_focus_z=paraxial_z,
        marginal_focus_z=marginal_z,
        best_focus_z=best_z,
        colc_diameter=2 * max_height,
        rms_radius_at_best=rms,
        rms_focus_z=rms_z,
        traced_rays=len(rays),
        dropped_rays=dropped,
    )
    logger.debug(f"Best focus for {prescription}: {metrics}")
    return metrics


def simulate_volume(
    config: LensConfig,
    volume: float,
    f_number: float,
    *,
    ray_count: int = DEFAULT_RAY_COUNT,
    clamp_to_rim: bool = False,
) -> VolumeSimulation:
    """Simulate the lens filled with the given volume at a fixed image-space F-number.

    The entrance pupil radius is EFL / (2 F#). It is not limited to the lens rim unless
    clamp_to_rim is set; an overfilled pupil is reported in the warnings.
    """
    if not f_number > 0:
        raise LensDomainError(f"F-number must be positive, got {f_number}")
    cap = resolve_cap(config.diameter, volume=volume)
    thickness = cap.sag if config.center_thickness is None else config.center_thickness
    pupil = plano_convex_focal(config.index, cap.radius) / (2 * f_number)
    rim = config.diameter / 2
    warnings = []
    if pupil > rim:
        if clamp_to_rim:
            warnings.append(f"entrance pupil radius {pupil:.4f} mm clamped to the lens rim {rim:.4f} mm")
            pupil = rim
        else:
            warnings.append(f"entrance pupil radius {pupil:.4f} mm exceeds the lens rim {rim:.4f} mm")
    prescription = Prescription(
        curved_radius=cap.radius,
        center_thickness=thickness,
        index=config.index,
        aperture_radius=min(pupil, cap.radius),
    )
    metrics = best_focus(prescription, ray_count, pupil_radius=pupil)
    if metrics.dropped_rays:
        warnings.append(f"{metrics.dropped_rays} of {ray_count} rays missed the curved surface and were dropped")
    for warning in warnings:
        logger.info(warning)
    return VolumeSimulation(
        efl=paraxial_efl(prescription),
        metrics=metrics,
        prescription=prescription,
        pupil_radius=pupil,
        warnings=warnings,
    )
