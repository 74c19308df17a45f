"""Run configuration for the liquilens commands.

Values are layered, later layers winning: built-in defaults, the Django setting LIQUILENS (a
dict), the key-value file named by the LIQUILENS_CONFIG environment variable, command-line flags.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any

from django.conf import settings

from .exceptions import ConfigError, LensDomainError
from .lens_model import LensConfig
from .utils import read_key_value_file

if TYPE_CHECKING:
    from collections.abc import Mapping

logger = logging.getLogger(f"liquilens.{__name__}")

ENV_VAR = "LIQUILENS_CONFIG"
OUTPUT_FORMATS = ("table", "csv", "json")
# config file key -> (RunConfig field, parser)
CONFIG_KEYS: dict[str, tuple[str, type]] = {
    "diameter": ("diameter", float),
    "index": ("index", float),
    "f_number": ("f_number", float),
    "format": ("output_format", str),
    "plot": ("plot_path", Path),
}


@dataclass(frozen=True)
class RunConfig:
    """Parameters shared by all commands. Defaults are the 2 mm water-filled lens at F/2.8."""

    diameter: float = 2.0
    index: float = 1.33
    f_number: float = 2.8
    output_format: str = "table"
    plot_path: Path | None = None

    def __post_init__(self) -> None:
        """Validate the configuration."""
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown output format '{self.output_format}', choose from {', '.join(OUTPUT_FORMATS)}")
        if not self.f_number > 0:
            raise ConfigError(f"F-number must be positive, got {self.f_number}")
        try:
            self.lens_config()
        except LensDomainError as e:
            raise ConfigError(str(e)) from e

    def lens_config(self, center_thickness: float | None = None) -> LensConfig:
        """Return the optical parameters of the lens."""
        return LensConfig(diameter=self.diameter, index=self.index, center_thickness=center_thickness)


def _parse(values: Mapping[str, Any], origin: str) -> dict[str, Any]:
    """Map config keys to RunConfig fields, converting values."""
    parsed = {}
    for key, value in values.items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{origin}: unknown setting '{key}', known settings are {', '.join(CONFIG_KEYS)}")
        name, cast = CONFIG_KEYS[key]
        try:
            parsed[name] = cast(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{origin}: bad value '{value}' for '{key}'") from e
    return parsed


def load_run_config(flags: Mapping[str, Any] | None = None, environ: Mapping[str, str] | None = None) -> RunConfig:
    """Build the RunConfig from defaults, Django settings, the config file and flags (None flags are unset)."""
    environ = os.environ if environ is None else environ
    values: dict[str, Any] = {}
    if settings.configured:
        values.update(_parse(getattr(settings, "LIQUILENS", {}), "Django setting LIQUILENS"))
    path = environ.get(ENV_VAR)
    if path:
        logger.debug(f"Reading config file {path} from {ENV_VAR}")
        values.update(_parse(read_key_value_file(Path(path)), path))
    values.update(_parse({k: v for k, v in (flags or {}).items() if v is not None}, "command line"))
    return RunConfig(**values)
