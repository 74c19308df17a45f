"""Import of measured (pumped volume, contact angle) series from CSV."""

from __future__ import annotations

import io
import logging
from importlib import resources
from typing import TYPE_CHECKING, BinaryIO, TextIO

from .calibration import MeasurementSeries, validate_points
from .exceptions import MeasurementError, MeasurementParseError

if TYPE_CHECKING:
    from collections.abc import Generator
    from pathlib import Path

logger = logging.getLogger(f"liquilens.{__name__}")

HEADER = ("volume", "contact_angle_deg")
SAMPLE_FILENAME = "sample_measurements.csv"


def csvreader(lines: TextIO) -> Generator[tuple[int, list[str]]]:
    """Yield (line number, fields) for each data line of a comma separated file, checking the header first."""
    header = next(lines, None)
    if header is None or not header.strip():
        raise MeasurementParseError("empty file, expected header " + ",".join(HEADER), lineno=1)
    keys = tuple(x.strip() for x in header.rstrip("\r\n").split(","))
    if keys != HEADER:
        raise MeasurementParseError(f"bad header '{header.rstrip()}', expected '{','.join(HEADER)}'", lineno=1)
    for lineno, row in enumerate(lines, start=2):
        if not row.strip():
            continue
        yield lineno, [x.strip() for x in row.rstrip("\r\n").split(",")]


def load_measurements(source: BinaryIO, *, volume_unit_label: str = "ul", name: str = "") -> MeasurementSeries:
    """Parse a measurement CSV (header volume,contact_angle_deg) from a byte stream."""
    try:
        text = source.read().decode("utf-8")
    except UnicodeDecodeError as e:
        raise MeasurementParseError(f"not UTF-8: {e}", lineno=1) from e
    points = []
    linenos = []
    for lineno, fields in csvreader(io.StringIO(text, newline="")):
        if len(fields) != len(HEADER):
            raise MeasurementParseError(f"expected {len(HEADER)} fields, got {len(fields)}", lineno=lineno)
        try:
            volume, angle = (float(x) for x in fields)
        except ValueError as e:
            raise MeasurementParseError(f"not a number: {e}", lineno=lineno) from e
        points.append((volume, angle))
        linenos.append(lineno)
    problems = validate_points(points, label=lambda i: f"line {linenos[i]}")
    if problems:
        raise MeasurementError(f"invalid measurements in {name or 'input'}", problems)
    logger.info(f"Loaded {len(points)} measurements from {name or 'input'}")
    return MeasurementSeries(points=tuple(points), volume_unit_label=volume_unit_label, source=name)


def load_measurements_file(path: Path) -> MeasurementSeries:
    """Load a measurement CSV from a file path."""
    with path.open("rb") as f:
        return load_measurements(f, name=str(path))


def sample_bytes() -> bytes:
    """Return the embedded sample dataset as stored."""
    return resources.files("liquilens").joinpath("data", SAMPLE_FILENAME).read_bytes()


def load_sample_measurements() -> MeasurementSeries:
    """Load the embedded six-point sample dataset (pumped volume in ul, contact angle in degrees)."""
    return load_measurements(io.BytesIO(sample_bytes()), name="embedded sample")
