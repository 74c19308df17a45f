"""liquilens management command fitting measured contact angles against pumped volume."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING, Any

from liquilens.calibration import fit_volume_model, linear_fit
from liquilens.exceptions import FitError
from liquilens.export_csv import render_record, write_sample
from liquilens.management.base import LensCommand
from liquilens.plots import plot_linear_fit

if TYPE_CHECKING:
    from django.core.management.base import CommandParser

    from liquilens.conf import RunConfig

logger = logging.getLogger(f"liquilens.{__name__}")


class Command(LensCommand):
    """Management command to fit a linear law and a volume model to measurements."""

    help = "Fit theta = slope * V + intercept and the pump calibration (scale, dead volume) to measurements"

    def add_command_arguments(self, parser: CommandParser) -> None:
        """Command-line arguments for the lens_fit command."""
        self.add_data_arguments(parser)
        parser.add_argument("--write-sample", type=Path, default=None, help="write the embedded sample CSV and exit")

    def run(self, config: RunConfig, **options: Any) -> None:  # noqa: ANN401
        """Fit the series and print both fits."""
        if options["write_sample"] is not None:
            write_sample(options["write_sample"])
            self.stderr.write(f"Wrote sample dataset to {options['write_sample']}")
            return
        series = self.load_series(options)
        fit = linear_fit(series)
        logger.debug(f"Linear fit {fit}")
        try:
            calibration = fit_volume_model(series, config.diameter)
        except FitError as e:
            self.warn(f"no volume model: {e}")
            calibration = None
        fields = [
            ("points", len(series), "int"),
            ("slope_deg_per_unit", fit.slope, "float"),
            ("intercept_deg", fit.intercept, "angle"),
            ("r_squared", fit.r_squared, "ratio"),
            ("scale_mm3_per_unit", None if calibration is None else calibration.scale, "float"),
            ("dead_volume", None if calibration is None else calibration.dead_volume, "float"),
            ("rms_residual_deg", None if calibration is None else calibration.rms_residual, "angle"),
        ]
        self.write(render_record(fields, config.output_format))
        if config.plot_path is not None:
            plot_linear_fit(series, fit, config.plot_path)
