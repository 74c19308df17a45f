"""Calibration of pumped volume against measured contact angle.

Measured series pair a pumped volume (in the pump's own unit) with a contact angle in degrees.
The physical model maps a pumped volume V to the effective cap volume scale * (V - dead_volume)
in mm3; dead_volume covers liquid that never reaches the cap (channels, leaks, trapped air).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .cap_geometry import HEMISPHERE_RTOL, hemisphere_volume, radius_from_contact_angle, resolve_cap
from .exceptions import FitError, LensDomainError, MeasurementError
from .lens_model import plano_convex_focal
from .numerics import golden_section_minimize

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import NDArray

    from .lens_model import LensConfig

logger = logging.getLogger(f"liquilens.{__name__}")

# pump units read as nanoliters, i.e. 1 pumped unit == 0.001 mm3 of cap volume
NOMINAL_SCALE = 1e-3
# focal range reported for the sample measurements, shortest first
REPORTED_FOCAL_RANGE = (3.95, 9.69)
ENDPOINT_TOLERANCE = 0.02
SCALE_RANGE = (1e-5, 1.0)
FIT_RTOL = 1e-6


def validate_points(points: Sequence[tuple[float, float]], label: Callable[[int], str] | None = None) -> list[str]:
    """Return a list of problems with a series of (volume, angle) points, empty if it is valid."""
    label = label or (lambda i: f"row {i + 1}")
    problems = []
    if len(points) < 2:  # noqa: PLR2004
        problems.append(f"a series needs at least 2 points, got {len(points)}")
    for i, (volume, angle) in enumerate(points):
        if not math.isfinite(volume):
            problems.append(f"{label(i)}: volume {volume} is not finite")
        if not 0 < angle < 90:  # noqa: PLR2004
            problems.append(f"{label(i)}: contact angle {angle} deg is outside (0, 90) deg")
        if i and not volume > points[i - 1][0]:
            problems.append(f"{label(i)}: volume {volume} does not increase from {points[i - 1][0]}")
    return problems


@dataclass(frozen=True)
class MeasurementSeries:
    """Ordered (pumped volume, contact angle in degrees) measurements."""

    points: tuple[tuple[float, float], ...]
    volume_unit_label: str = "ul"
    source: str = ""

    def __post_init__(self) -> None:
        """Enforce the series invariants."""
        problems = validate_points(self.points)
        if problems:
            raise MeasurementError("invalid measurement series", problems)

    @property
    def volumes(self) -> NDArray[np.float64]:
        """Return the pumped volumes."""
        return np.array([p[0] for p in self.points])

    @property
    def angles(self) -> NDArray[np.float64]:
        """Return the contact angles in degrees."""
        return np.array([p[1] for p in self.points])

    def __len__(self) -> int:
        """Return the number of points."""
        return len(self.points)


@dataclass(frozen=True)
class LinearFit:
    """Ordinary least squares line theta = slope * V + intercept."""

    slope: float
    intercept: float
    r_squared: float
    residuals: tuple[float, ...]

    def predict(self, volume: float) -> float:
        """Return the fitted angle in degrees at a pumped volume."""
        return self.slope * volume + self.intercept


@dataclass(frozen=True)
class VolumeCalibration:
    """Linear map from pumped volume to effective cap volume."""

    scale: float
    dead_volume: float = 0.0
    rms_residual: float | None = None

    def __post_init__(self) -> None:
        """Validate the scale."""
        if not self.scale > 0:
            raise LensDomainError(f"calibration scale must be positive, got {self.scale}")

    def effective_volume(self, pumped_volume: float) -> float:
        """Return the cap volume in mm3 for a pumped volume."""
        return self.scale * (pumped_volume - self.dead_volume)

    def pumped_volume(self, effective_volume: float) -> float:
        """Return the pumped volume that produces an effective cap volume."""
        return effective_volume / self.scale + self.dead_volume

    def pumped_range(self, diameter: float) -> tuple[float, float]:
        """Return the pumped volumes (exclusive lower, inclusive upper) that stay in the cap regime."""
        return self.dead_volume, self.pumped_volume(hemisphere_volume(diameter))


NOMINAL_CALIBRATION = VolumeCalibration(scale=NOMINAL_SCALE)


def linear_fit(series: MeasurementSeries) -> LinearFit:
    """Fit theta = slope * V + intercept by ordinary least squares."""
    x = series.volumes
    y = series.angles
    slope, intercept = (float(c) for c in np.polyfit(x, y, 1))
    residuals = y - np.polyval((slope, intercept), x)
    ss_res = float(np.dot(residuals, residuals))
    dy = y - y.mean()
    ss_tot = float(np.dot(dy, dy))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    fit = LinearFit(
        slope=slope,
        intercept=intercept,
        r_squared=max(0.0, min(1.0, r_squared)),
        residuals=tuple(float(r) for r in residuals),
    )
    logger.info(
        f"Linear fit over {len(series)} points: slope {slope:.6g}, intercept {intercept:.6g}, r2 {r_squared:.6f}"
    )
    return fit


def predict_theta(calibration: VolumeCalibration, diameter: float, pumped_volume: float) -> float:
    """Return the contact angle in degrees of the cap fed by a pumped volume."""
    effective = calibration.effective_volume(pumped_volume)
    return resolve_cap(diameter, volume=effective).contact_angle_deg


def _sse(series: MeasurementSeries, diameter: float, scale: float, dead_volume: float) -> float:
    """Return the sum of squared angle residuals, or inf when a point leaves the cap regime."""
    effective = scale * (series.volumes - dead_volume)
    if np.any(effective <= 0) or np.any(effective > hemisphere_volume(diameter) * (1 + HEMISPHERE_RTOL)):
        return math.inf
    predicted = np.array([resolve_cap(diameter, volume=float(v)).contact_angle_deg for v in effective])
    residuals = predicted - series.angles
    return float(np.dot(residuals, residuals))


def rms_residual(series: MeasurementSeries, diameter: float, calibration: VolumeCalibration) -> float:
    """Return the RMS angle residual in degrees of a calibration over a series (inf if infeasible)."""
    return math.sqrt(_sse(series, diameter, calibration.scale, calibration.dead_volume) / len(series))


def _dead_volume_bounds(series: MeasurementSeries, diameter: float, scale: float) -> tuple[float, float] | None:
    """Return the dead volumes keeping every point inside the cap regime for a scale, or None."""
    volumes = series.volumes
    lo = max(0.0, float(volumes[-1]) - hemisphere_volume(diameter) / scale)
    # the first point needs a strictly positive effective volume
    hi = float(volumes[0]) - FIT_RTOL * float(volumes[-1] - volumes[0])
    if hi <= lo:
        return None
    return lo, hi


def _profile(series: MeasurementSeries, diameter: float, scale: float) -> tuple[float, float]:
    """Return the best dead volume and its SSE for a fixed scale."""
    bounds = _dead_volume_bounds(series, diameter, scale)
    if bounds is None:
        return math.nan, math.inf
    tol = FIT_RTOL * float(series.volumes[-1])
    return golden_section_minimize(lambda d: _sse(series, diameter, scale, d), *bounds, tol=tol)


def fit_volume_model(
    series: MeasurementSeries,
    diameter: float,
    *,
    scale_steps: int = 41,
    dead_steps: int = 32,
) -> VolumeCalibration:
    """Fit scale and dead volume so the cap theory reproduces the measured angles.

    A coarse grid (log-spaced scale, linear dead volume) locates the basin; the scale is then
    refined by golden-section search over the neighbouring grid cells, minimizing over the dead
    volume for each trial scale, to FIT_RTOL relative.
    """
    if not diameter > 0:
        raise LensDomainError(f"diameter must be positive, got {diameter}")
    scales = np.logspace(math.log10(SCALE_RANGE[0]), math.log10(SCALE_RANGE[1]), scale_steps)
    deads = np.linspace(0.0, float(series.volumes[-1]), dead_steps, endpoint=False)

    # ties keep the lowest scale, then the lowest dead volume
    best = (math.inf, 0, 0.0)
    for i, scale in enumerate(scales):
        for dead in deads:
            sse = _sse(series, diameter, float(scale), float(dead))
            if sse < best[0]:
                best = (sse, i, float(dead))
    grid_sse, i, grid_dead = best
    if not math.isfinite(grid_sse):
        raise FitError(f"no feasible volume model: every grid candidate leaves the cap regime for diameter {diameter}")
    logger.debug(f"Grid best: scale {scales[i]}, dead volume {grid_dead}, sse {grid_sse}")

    log_lo = math.log10(scales[max(i - 1, 0)])
    log_hi = math.log10(scales[min(i + 1, len(scales) - 1)])
    log_scale, sse = golden_section_minimize(
        lambda s: _profile(series, diameter, 10**s)[1], log_lo, log_hi, tol=FIT_RTOL / math.log(10)
    )
    scale = 10**log_scale
    dead, sse = _profile(series, diameter, scale)
    if not sse <= grid_sse:
        scale, dead, sse = float(scales[i]), grid_dead, grid_sse

    calibration = VolumeCalibration(
        scale=scale,
        dead_volume=dead,
        rms_residual=math.sqrt(sse / len(series)),
    )
    logger.info(
        f"Volume model fit: scale {calibration.scale:.6g}, dead volume {calibration.dead_volume:.6g} "
        f"{series.volume_unit_label}, rms residual {calibration.rms_residual:.4f} deg"
    )
    return calibration


@dataclass(frozen=True)
class ComparisonRow:
    """Theory against measurement at one measured point. Angles in degrees, focal lengths in mm."""

    volume: float
    theta_meas: float
    theta_theory: float | None
    theta_fitted: float | None
    f_meas: float
    f_theory: float | None
    note: str = ""

    @property
    def theta_delta(self) -> float | None:
        """Return theory minus measured angle."""
        return None if self.theta_theory is None else self.theta_theory - self.theta_meas

    @property
    def f_delta(self) -> float | None:
        """Return theory minus measured focal length."""
        return None if self.f_theory is None else self.f_theory - self.f_meas

    @property
    def f_delta_relative(self) -> float | None:
        """Return the focal length delta relative to the measured focal length."""
        delta = self.f_delta
        return None if delta is None else delta / self.f_meas


@dataclass(frozen=True)
class ComparisonTable:
    """Per-point comparison of a measured series against the cap theory."""

    rows: list[ComparisonRow]
    nominal: VolumeCalibration
    fitted: VolumeCalibration | None = None
    endpoints: list[EndpointCheck] = field(default_factory=list)


@dataclass(frozen=True)
class EndpointCheck:
    """Focal length implied by a measured angle against a reported value."""

    theta: float  # degrees
    index: float
    computed_focal: float
    reported_focal: float
    matching_index: float

    @property
    def relative_delta(self) -> float:
        """Return (computed - reported) / reported."""
        return (self.computed_focal - self.reported_focal) / self.reported_focal

    @property
    def reproduced(self) -> bool:
        """Return whether the computed value is within the endpoint tolerance."""
        return abs(self.relative_delta) <= ENDPOINT_TOLERANCE

    def describe(self) -> str:
        """Return a one-line statement of the check."""
        verdict = "reproduced" if self.reproduced else "NOT reproduced"
        return (
            f"theta {self.theta:.2f} deg: f = {self.computed_focal:.4f} mm at n = {self.index} vs reported "
            f"{self.reported_focal} mm ({self.relative_delta:+.1%}), {verdict}; "
            f"n = {self.matching_index:.4f} reproduces the reported value"
        )


def measured_focal(config: LensConfig, theta: float) -> float:
    """Return the focal length implied by a measured contact angle in degrees."""
    return plano_convex_focal(config.index, radius_from_contact_angle(config.diameter, math.radians(theta)))


def measured_focal_lengths(series: MeasurementSeries, config: LensConfig) -> list[tuple[float, float]]:
    """Return (pumped volume, focal length implied by the measured angle) for every point."""
    return [(volume, measured_focal(config, theta)) for volume, theta in series.points]


def endpoint_discrepancy(
    series: MeasurementSeries,
    config: LensConfig,
    reported: tuple[float, float] = REPORTED_FOCAL_RANGE,
) -> list[EndpointCheck]:
    """Check the focal lengths implied by the extreme angles against a reported range.

    The largest angle gives the shortest focal length, so it is paired with reported[0].
    """
    checks = []
    for theta, reported_focal in ((float(series.angles.max()), reported[0]), (float(series.angles.min()), reported[1])):
        radius = radius_from_contact_angle(config.diameter, math.radians(theta))
        check = EndpointCheck(
            theta=theta,
            index=config.index,
            computed_focal=plano_convex_focal(config.index, radius),
            reported_focal=reported_focal,
            matching_index=1 + radius / reported_focal,
        )
        if not check.reproduced:
            logger.info(check.describe())
        checks.append(check)
    return checks


def compare_table(
    series: MeasurementSeries,
    config: LensConfig,
    calibration: VolumeCalibration | None = None,
) -> ComparisonTable:
    """Compare measured angles and implied focal lengths with the cap theory.

    Theory columns use the nominal interpretation (NOMINAL_SCALE, no dead volume); the fitted
    column uses the given calibration. Rows whose volume leaves the cap regime are marked with a
    note instead of being dropped.
    """
    rows = []
    for volume, theta in series.points:
        notes = []
        theta_theory = f_theory = theta_fitted = None
        try:
            cap = resolve_cap(config.diameter, volume=NOMINAL_CALIBRATION.effective_volume(volume))
            theta_theory = cap.contact_angle_deg
            f_theory = plano_convex_focal(config.index, cap.radius)
        except LensDomainError as e:
            notes.append(f"theory: {e}")
        if calibration is not None:
            try:
                theta_fitted = predict_theta(calibration, config.diameter, volume)
            except LensDomainError as e:
                notes.append(f"fitted: {e}")
        rows.append(
            ComparisonRow(
                volume=volume,
                theta_meas=theta,
                theta_theory=theta_theory,
                theta_fitted=theta_fitted,
                f_meas=measured_focal(config, theta),
                f_theory=f_theory,
                note="; ".join(notes),
            )
        )
    marked = sum(1 for row in rows if row.note)
    logger.info(f"Compared {len(rows)} points, {marked} marked as outside the cap regime")
    return ComparisonTable(
        rows=rows,
        nominal=NOMINAL_CALIBRATION,
        fitted=calibration,
        endpoints=endpoint_discrepancy(series, config),
    )
