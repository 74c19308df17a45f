"""Base class for the liquilens management commands."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING, Any

from django.core.management.base import BaseCommand, CommandError, CommandParser

from liquilens.calibration import NOMINAL_SCALE, VolumeCalibration
from liquilens.conf import OUTPUT_FORMATS, RunConfig, load_run_config
from liquilens.exceptions import ConfigError, LiquilensError
from liquilens.import_csv import load_measurements_file, load_sample_measurements
from liquilens.utils import get_loglevel

if TYPE_CHECKING:
    from liquilens.calibration import MeasurementSeries

logger = logging.getLogger(f"liquilens.{__name__}")

USAGE_ERROR = 1
DOMAIN_ERROR = 2


class LensCommand(BaseCommand):
    """Management command taking the common lens flags and reporting library errors with exit code 2."""

    requires_system_checks: list[str] = []  # type: ignore[assignment]
    # commands without a chart warn about --plot
    draws_plot = True

    def add_arguments(self, parser: CommandParser) -> None:
        """Command-line arguments shared by all lens commands. Unset flags fall back to the config layers."""
        parser.add_argument("--diameter", type=float, default=None, help="lens aperture diameter in mm (2.0)")
        parser.add_argument("--index", type=float, default=None, help="refractive index of the liquid (1.33)")
        parser.add_argument("--f-number", type=float, default=None, help="image-space F-number for tracing (2.8)")
        parser.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="output format (table)")
        parser.add_argument("--plot", type=Path, default=None, help="write an SVG chart to this path")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser: CommandParser) -> None:
        """Add the arguments of a specific command."""

    def add_pump_arguments(self, parser: CommandParser) -> None:
        """Arguments converting pump units to effective cap volume."""
        parser.add_argument(
            "--pump-units",
            action="store_true",
            help="read volumes as pumped volumes and convert them with --scale and --dead-volume",
        )
        parser.add_argument("--scale", type=float, default=NOMINAL_SCALE, help="mm3 per pumped unit (0.001)")
        parser.add_argument("--dead-volume", type=float, default=0.0, help="pumped volume lost before the cap (0)")

    def pump_calibration(self, options: dict[str, Any]) -> VolumeCalibration | None:
        """Return the pump calibration when --pump-units is given."""
        if not options["pump_units"]:
            return None
        return VolumeCalibration(scale=options["scale"], dead_volume=options["dead_volume"])

    def handle(self, *args: str, **options: Any) -> None:  # noqa: ANN401, ARG002
        """Load the run configuration and run the command, mapping library errors to exit codes."""
        logging.basicConfig(level=get_loglevel(verbosity=options["verbosity"]))
        flags = {
            "diameter": options["diameter"],
            "index": options["index"],
            "f_number": options["f_number"],
            "format": options["format"],
            "plot": options["plot"],
        }
        try:
            config = load_run_config(flags)
        except ConfigError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR) from e
        logger.debug(f"Running {self.__module__} with {config}")
        if options["plot"] is not None and not self.draws_plot:
            self.warn(f"--plot {options['plot']} ignored, this command draws no chart")
        try:
            self.run(config, **options)
        except LiquilensError as e:
            raise CommandError(str(e), returncode=DOMAIN_ERROR) from e
        except OSError as e:
            raise CommandError(f"{e.filename or ''}: {e.strerror or e}", returncode=DOMAIN_ERROR) from e

    def run(self, config: RunConfig, **options: Any) -> None:  # noqa: ANN401
        """Do the work of the command."""
        raise NotImplementedError

    def load_series(self, options: dict[str, Any]) -> MeasurementSeries:
        """Load the measurement file given as positional argument, or the embedded sample."""
        if options["sample"]:
            return load_sample_measurements()
        if options["data"] is None:
            raise CommandError("give a measurement file or --sample", returncode=USAGE_ERROR)
        return load_measurements_file(options["data"])

    def add_data_arguments(self, parser: CommandParser) -> None:
        """Arguments selecting a measurement series."""
        parser.add_argument("data", nargs="?", type=Path, default=None, help="CSV file with volume,contact_angle_deg")
        parser.add_argument("--sample", action="store_true", help="use the embedded six-point sample dataset")

    def write(self, text: str) -> None:
        """Write command output as is."""
        self.stdout.write(text, ending="")

    def warn(self, message: str) -> None:
        """Write a warning to stderr."""
        self.stderr.write(f"warning: {message}")
