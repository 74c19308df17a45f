"""Shared fixtures for the liquilens tests."""

from __future__ import annotations

import numpy as np
import pytest

from liquilens.calibration import MeasurementSeries
from liquilens.cli import configure_django
from liquilens.conf import ENV_VAR
from liquilens.import_csv import load_sample_measurements
from liquilens.lens_model import LensConfig


def pytest_configure() -> None:
    """Configure minimal Django settings so the management commands can be loaded."""
    configure_django()


@pytest.fixture(autouse=True)
def _no_config_file(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(ENV_VAR, raising=False)


@pytest.fixture
def rng() -> np.random.Generator:
    """Return a seeded generator, independent of pytest-randomly's reseeding."""
    return np.random.default_rng(20240601)


@pytest.fixture
def lens() -> LensConfig:
    """Return the default 2 mm water lens."""
    return LensConfig()


@pytest.fixture
def sample() -> MeasurementSeries:
    """Return the embedded six point sample dataset."""
    return load_sample_measurements()
