"""liquilens management command solving the volume that gives a focal length."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from liquilens.export_csv import render_record
from liquilens.lens_model import focal_to_cap
from liquilens.management.base import LensCommand

if TYPE_CHECKING:
    from django.core.management.base import CommandParser

    from liquilens.conf import RunConfig


class Command(LensCommand):
    """Management command for the inverse focal length -> volume chain."""

    help = "Solve the liquid volume, contact angle, sag and radius for a focal length"
    draws_plot = False

    def add_command_arguments(self, parser: CommandParser) -> None:
        """Command-line arguments for the lens_inverse command."""
        parser.add_argument("--focal", type=float, required=True, help="focal length in mm")
        self.add_pump_arguments(parser)

    def run(self, config: RunConfig, **options: Any) -> None:  # noqa: ANN401
        """Solve the cap and print the required volume."""
        cap = focal_to_cap(config.lens_config(), options["focal"])
        fields = [
            ("focal_mm", options["focal"], "length"),
            ("volume_mm3", cap.volume, "volume"),
            ("contact_angle_deg", cap.contact_angle_deg, "angle"),
            ("sag_mm", cap.sag, "length"),
            ("radius_mm", cap.radius, "length"),
        ]
        calibration = self.pump_calibration(options)
        if calibration is not None:
            fields.append(("pumped_volume", calibration.pumped_volume(cap.volume), "float"))
        self.write(render_record(fields, config.output_format))
