"""Utils for liquilens."""

import logging
from pathlib import Path

from .exceptions import ConfigError

logger = logging.getLogger(f"liquilens.{__name__}")


def read_key_value_file(path: Path) -> dict[str, str]:
    """Read a file of 'key = value' lines. Blank lines and lines starting with # are ignored."""
    values = {}
    try:
        lines = path.expanduser().read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"{path} line {lineno}: expected 'key = value', got '{stripped}'")
        values[key.strip()] = value.strip()
    logger.debug(f"Read {len(values)} settings from {path}")
    return values


def get_loglevel(verbosity: int) -> int:
    """Get logging loglevel from management command verbosity."""
    if verbosity == 0:
        return logging.ERROR
    if verbosity == 1:
        return logging.WARNING
    if verbosity == 2:  # noqa: PLR2004
        return logging.INFO
    return logging.DEBUG
