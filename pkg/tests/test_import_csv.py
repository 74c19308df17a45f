"""Tests for reading measurement CSV files."""

from __future__ import annotations

import io
from typing import TYPE_CHECKING

import pytest

from liquilens.exceptions import MeasurementError, MeasurementParseError
from liquilens.export_csv import write_sample
from liquilens.import_csv import load_measurements, load_measurements_file, sample_bytes

if TYPE_CHECKING:
    from pathlib import Path

    from liquilens.calibration import MeasurementSeries


def _load(text: str, **kwargs: str) -> MeasurementSeries:
    return load_measurements(io.BytesIO(text.encode("utf-8")), **kwargs)


def test_load_measurements() -> None:
    series = _load("volume,contact_angle_deg\n100,10.5\n200,20\n", name="inline", volume_unit_label="nl")
    assert series.points == ((100, 10.5), (200, 20))
    assert series.volume_unit_label == "nl"
    assert series.source == "inline"


def test_load_measurements_tolerates_crlf_spaces_and_blank_lines() -> None:
    series = _load("volume, contact_angle_deg\r\n100, 10.5\r\n\r\n200 ,20\r\n")
    assert series.points == ((100, 10.5), (200, 20))


def test_empty_file() -> None:
    with pytest.raises(MeasurementParseError, match="line 1: empty file"):
        _load("")


def test_bad_header() -> None:
    with pytest.raises(MeasurementParseError, match="bad header 'volume,angle'") as excinfo:
        _load("volume,angle\n100,10\n200,20\n")
    assert excinfo.value.lineno == 1


def test_bad_number() -> None:
    with pytest.raises(MeasurementParseError, match="line 3: not a number") as excinfo:
        _load("volume,contact_angle_deg\n100,10\n200,abc\n")
    assert excinfo.value.lineno == 3


def test_wrong_field_count() -> None:
    with pytest.raises(MeasurementParseError, match="line 2: expected 2 fields, got 3"):
        _load("volume,contact_angle_deg\n100,10,1\n200,20\n")


def test_not_utf8() -> None:
    with pytest.raises(MeasurementParseError, match="not UTF-8"):
        load_measurements(io.BytesIO(b"volume,contact_angle_deg\n\xff\xfe,1\n"))


def test_validation_problems_name_the_line() -> None:
    with pytest.raises(MeasurementError) as excinfo:
        _load("volume,contact_angle_deg\n100,10\nno separator here\n")
    assert isinstance(excinfo.value, MeasurementParseError)
    with pytest.raises(MeasurementError) as excinfo:
        _load("volume,contact_angle_deg\n100,10\n\n90,20\n300,91\n")
    assert excinfo.value.problems == [
        "line 4: volume 90.0 does not increase from 100.0",
        "line 5: contact angle 91.0 deg is outside (0, 90) deg",
    ]


def test_sample_roundtrip(tmp_path: Path) -> None:
    path = tmp_path / "sample.csv"
    write_sample(path)
    assert path.read_bytes() == sample_bytes()
    series = load_measurements_file(path)
    assert len(series) == 6
    assert series.source == str(path)


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        load_measurements_file(tmp_path / "missing.csv")
