"""liquilens management command solving the cap and focal length for a volume."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

from liquilens.cap_geometry import resolve_cap
from liquilens.export_csv import render_record
from liquilens.lens_model import plano_convex_focal
from liquilens.management.base import LensCommand

if TYPE_CHECKING:
    from django.core.management.base import CommandParser

    from liquilens.conf import RunConfig

logger = logging.getLogger(f"liquilens.{__name__}")


class Command(LensCommand):
    """Management command for the forward volume -> cap -> focal length chain."""

    help = "Solve contact angle, sag, radius and focal length for a liquid volume"
    draws_plot = False

    def add_command_arguments(self, parser: CommandParser) -> None:
        """Command-line arguments for the lens_forward command."""
        parser.add_argument(
            "--volume", type=float, required=True, help="cap volume in mm3 (pump units with --pump-units)"
        )
        self.add_pump_arguments(parser)

    def run(self, config: RunConfig, **options: Any) -> None:  # noqa: ANN401
        """Resolve the cap and print it with its focal length."""
        fields = []
        volume = options["volume"]
        calibration = self.pump_calibration(options)
        if calibration is not None:
            fields.append(("pumped_volume", volume, "float"))
            volume = calibration.effective_volume(volume)
        cap = resolve_cap(config.diameter, volume=volume)
        logger.debug(f"Resolved {cap}")
        focal = plano_convex_focal(config.index, cap.radius)
        fields += [
            ("volume_mm3", cap.volume, "volume"),
            ("contact_angle_deg", cap.contact_angle_deg, "angle"),
            ("sag_mm", cap.sag, "length"),
            ("radius_mm", cap.radius, "length"),
            ("focal_mm", focal, "length"),
        ]
        self.write(render_record(fields, config.output_format))
