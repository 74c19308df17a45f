"""liquilens management command comparing measurements with the cap theory."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

from liquilens.calibration import NOMINAL_CALIBRATION, compare_table, fit_volume_model
from liquilens.cap_geometry import hemisphere_volume
from liquilens.exceptions import FitError
from liquilens.export_csv import render_comparison
from liquilens.lens_model import volume_curve
from liquilens.management.base import LensCommand
from liquilens.plots import plot_comparison

if TYPE_CHECKING:
    from django.core.management.base import CommandParser

    from liquilens.calibration import MeasurementSeries, VolumeCalibration
    from liquilens.conf import RunConfig
    from liquilens.lens_model import LensConfig

logger = logging.getLogger(f"liquilens.{__name__}")

CURVE_SAMPLES = 200


def theory_samples(
    config: LensConfig, calibration: VolumeCalibration, series: MeasurementSeries
) -> list[tuple[float, float, float]]:
    """Return (pumped volume, contact angle deg, focal length mm) along the theory over the measured range."""
    limit = hemisphere_volume(config.diameter)
    lo = max(calibration.effective_volume(float(series.volumes[0])), limit * 1e-4)
    hi = min(calibration.effective_volume(float(series.volumes[-1])), limit)
    if not lo < hi:
        return []
    return [
        (calibration.pumped_volume(p.volume), p.contact_angle, p.focal_length)
        for p in volume_curve(config, lo, hi, CURVE_SAMPLES)
    ]


class Command(LensCommand):
    """Management command to compare measured angles and focal lengths with theory."""

    help = "Compare measured contact angles and implied focal lengths with the nominal and fitted theory"

    def add_command_arguments(self, parser: CommandParser) -> None:
        """Command-line arguments for the lens_compare command."""
        self.add_data_arguments(parser)
        parser.add_argument("--no-fit", action="store_true", help="skip the volume model fit")

    def run(self, config: RunConfig, **options: Any) -> None:  # noqa: ANN401
        """Build the comparison table and print it with the endpoint discrepancy statements."""
        series = self.load_series(options)
        lens = config.lens_config()
        calibration = None
        if not options["no_fit"]:
            try:
                calibration = fit_volume_model(series, lens.diameter)
            except FitError as e:
                self.warn(f"no fitted column: {e}")
        logger.debug(f"Comparing {len(series)} points from {series.source} with calibration {calibration}")
        table = compare_table(series, lens, calibration)
        out, err = render_comparison(table, config.output_format)
        self.write(out)
        if err:
            self.stderr.write(err, ending="")
        if config.plot_path is not None:
            theory = theory_samples(lens, NOMINAL_CALIBRATION, series)
            fitted = [] if calibration is None else theory_samples(lens, calibration, series)
            plot_comparison(table, theory, fitted, config.plot_path)
