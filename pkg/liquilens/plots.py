"""Static SVG charts of curves, ray fans and theory/measurement comparisons."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import matplotlib as mpl

mpl.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

if TYPE_CHECKING:
    from pathlib import Path

    from matplotlib.figure import Figure

    from .calibration import ComparisonTable, LinearFit, MeasurementSeries
    from .lens_model import CurvePoint
    from .ray_trace import MeridionalRay, SpotMetrics

logger = logging.getLogger(f"liquilens.{__name__}")

# SVG sizes are in points, 72 per inch: 800x600
SVG_SIZE = (800, 600)
FIGSIZE = (SVG_SIZE[0] / 72, SVG_SIZE[1] / 72)
# fixed ids, fonts as paths and no timestamp keep the SVG byte-identical between runs
SVG_RC = {"svg.hashsalt": "liquilens", "svg.fonttype": "path"}


def _save(fig: Figure, path: Path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info(f"Wrote plot {path}")


def plot_curve(points: list[CurvePoint], path: Path) -> None:
    """Plot volume against focal length and against contact angle."""
    volumes = [p.volume for p in points]
    with mpl.rc_context(SVG_RC):
        fig, (ax_f, ax_theta) = plt.subplots(1, 2, figsize=FIGSIZE, layout="constrained")
        ax_f.plot(volumes, [p.focal_length for p in points], "b-", label="focal length")
        ax_f.set_xlabel("volume (mm$^3$)")
        ax_f.set_ylabel("focal length (mm)")
        ax_f.set_title("V - f")
        ax_f.legend()
        ax_theta.plot(volumes, [p.contact_angle for p in points], "g-", label="contact angle")
        ax_theta.set_xlabel("volume (mm$^3$)")
        ax_theta.set_ylabel("contact angle (deg)")
        ax_theta.set_title("V - theta")
        ax_theta.legend()
        _save(fig, path)


def plot_spot_fan(rays: list[MeridionalRay], metrics: SpotMetrics, path: Path) -> None:
    """Plot the exit rays of a fan around the focus, marking the focus planes and the least confusion circle."""
    margin = max(metrics.paraxial_focus_z - metrics.marginal_focus_z, 1e-6)
    z = np.linspace(metrics.marginal_focus_z - margin, metrics.paraxial_focus_z + margin, 200)
    with mpl.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=FIGSIZE, layout="constrained")
        for ray in rays:
            heights = [ray.height_at(float(zi)) * 1000 for zi in z]
            ax.plot(z, heights, "b-", linewidth=0.5)
            ax.plot(z, [-h for h in heights], "b-", linewidth=0.5)
        radius = metrics.colc_diameter / 2 * 1000
        ax.axvline(metrics.paraxial_focus_z, color="g", linestyle="--", label="paraxial focus")
        ax.axvline(metrics.marginal_focus_z, color="m", linestyle="--", label="marginal focus")
        ax.plot([metrics.best_focus_z] * 2, [-radius, radius], "r-", linewidth=2, label="least confusion")
        if radius > 0:
            ax.set_ylim(-3 * radius, 3 * radius)
        ax.set_xlabel("z (mm)")
        ax.set_ylabel("ray height (um)")
        ax.set_title(f"ray fan, least confusion diameter {metrics.colc_diameter_um:.3f} um")
        ax.legend()
        _save(fig, path)


def plot_linear_fit(series: MeasurementSeries, fit: LinearFit, path: Path) -> None:
    """Plot measured angles against pumped volume with the least squares line."""
    volumes = series.volumes
    with mpl.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=FIGSIZE, layout="constrained")
        ax.plot(volumes, series.angles, "ro", label="measured")
        ax.plot(volumes, [fit.predict(v) for v in volumes], "b-", label=f"linear fit, r$^2$ = {fit.r_squared:.4f}")
        ax.set_xlabel(f"pumped volume ({series.volume_unit_label})")
        ax.set_ylabel("contact angle (deg)")
        ax.legend()
        _save(fig, path)


def plot_comparison(
    table: ComparisonTable,
    theory: list[tuple[float, float, float]],
    fitted: list[tuple[float, float, float]],
    path: Path,
) -> None:
    """Overlay measured angles and focal lengths on the theory curves.

    theory and fitted are (pumped volume, contact angle deg, focal length mm) samples.
    """
    volumes = [row.volume for row in table.rows]
    with mpl.rc_context(SVG_RC):
        fig, (ax_theta, ax_f) = plt.subplots(1, 2, figsize=FIGSIZE, layout="constrained")
        ax_theta.plot(volumes, [row.theta_meas for row in table.rows], "ro", label="measured")
        ax_f.plot(volumes, [row.f_meas for row in table.rows], "ro", label="measured")
        curves = ((theory, "b-", f"theory, scale {table.nominal.scale:g}"), (fitted, "g--", "fitted"))
        for samples, style, label in curves:
            if samples:
                v, theta, f = zip(*samples, strict=True)
                ax_theta.plot(v, theta, style, label=label)
                ax_f.plot(v, f, style, label=label)
        ax_theta.set_xlabel("pumped volume")
        ax_theta.set_ylabel("contact angle (deg)")
        ax_theta.legend()
        ax_f.set_xlabel("pumped volume")
        ax_f.set_ylabel("focal length (mm)")
        ax_f.legend()
        _save(fig, path)
