"""liquilens management command sampling the theoretical V-f and V-theta curves."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from liquilens.export_csv import CURVE_COLUMNS, curve_rows, render_rows
from liquilens.lens_model import theoretical_curve
from liquilens.management.base import LensCommand
from liquilens.plots import plot_curve

if TYPE_CHECKING:
    from django.core.management.base import CommandParser

    from liquilens.conf import RunConfig


class Command(LensCommand):
    """Management command to tabulate volume and contact angle over a focal length range."""

    help = "Tabulate volume, contact angle, radius and sag for uniformly spaced focal lengths"

    def add_command_arguments(self, parser: CommandParser) -> None:
        """Command-line arguments for the lens_curve command."""
        parser.add_argument("--f-min", type=float, required=True, help="shortest focal length in mm")
        parser.add_argument("--f-max", type=float, required=True, help="longest focal length in mm")
        parser.add_argument("--steps", type=int, default=10, help="number of samples (10)")

    def run(self, config: RunConfig, **options: Any) -> None:  # noqa: ANN401
        """Sample the curve, print it and optionally plot it."""
        points = theoretical_curve(config.lens_config(), options["f_min"], options["f_max"], options["steps"])
        self.write(render_rows(CURVE_COLUMNS, curve_rows(points), config.output_format))
        if config.plot_path is not None:
            plot_curve(points, config.plot_path)
