"""liquilens management command ray tracing the lens for a volume."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

from liquilens.export_csv import render_record
from liquilens.management.base import LensCommand
from liquilens.plots import plot_spot_fan
from liquilens.ray_trace import DEFAULT_RAY_COUNT, fan_heights, simulate_volume, trace_fan

if TYPE_CHECKING:
    from django.core.management.base import CommandParser

    from liquilens.conf import RunConfig

logger = logging.getLogger(f"liquilens.{__name__}")


class Command(LensCommand):
    """Management command to report focal length and spherical aberration of a filled lens."""

    help = "Trace a meridional ray fan through the lens and report focus positions and blur"

    def add_command_arguments(self, parser: CommandParser) -> None:
        """Command-line arguments for the lens_trace command."""
        parser.add_argument(
            "--volume", type=float, required=True, help="cap volume in mm3 (pump units with --pump-units)"
        )
        parser.add_argument(
            "--rays", type=int, default=DEFAULT_RAY_COUNT, help=f"rays in the fan ({DEFAULT_RAY_COUNT})"
        )
        parser.add_argument("--clamp-to-rim", action="store_true", help="limit the entrance pupil to the lens rim")
        self.add_pump_arguments(parser)

    def run(self, config: RunConfig, **options: Any) -> None:  # noqa: ANN401
        """Simulate the lens and print the spot metrics."""
        volume = options["volume"]
        calibration = self.pump_calibration(options)
        if calibration is not None:
            volume = calibration.effective_volume(volume)
        sim = simulate_volume(
            config.lens_config(),
            volume,
            config.f_number,
            ray_count=options["rays"],
            clamp_to_rim=options["clamp_to_rim"],
        )
        metrics = sim.metrics
        logger.debug(f"Traced {metrics.traced_rays} rays, dropped {metrics.dropped_rays}")
        fields = [
            ("volume_mm3", volume, "volume"),
            ("f_number", config.f_number, "float"),
            ("efl_mm", sim.efl, "length"),
            ("pupil_radius_mm", sim.pupil_radius, "length"),
            ("paraxial_focus_z_mm", metrics.paraxial_focus_z, "length"),
            ("marginal_focus_z_mm", metrics.marginal_focus_z, "length"),
            ("best_focus_z_mm", metrics.best_focus_z, "length"),
            ("colc_diameter_um", metrics.colc_diameter_um, "um"),
            ("rms_radius_um", metrics.rms_radius_at_best * 1000, "um"),
            ("rms_focus_z_mm", metrics.rms_focus_z, "length"),
            ("traced_rays", metrics.traced_rays, "int"),
            ("dropped_rays", metrics.dropped_rays, "int"),
        ]
        if config.output_format == "json":
            fields.append(("warnings", sim.warnings, "text"))
        self.write(render_record(fields, config.output_format))
        for warning in sim.warnings:
            self.warn(warning)
        if config.plot_path is not None:
            rays, _ = trace_fan(sim.prescription, fan_heights(sim.pupil_radius, options["rays"]))
            plot_spot_fan(rays, metrics, config.plot_path)
