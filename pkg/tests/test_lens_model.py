"""Tests for the thin-lens model and the volume <-> focal length chains."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np
import pytest

from liquilens import cap_geometry
from liquilens.cap_geometry import hemisphere_volume
from liquilens.exceptions import LensDomainError, UnreachableFocalError
from liquilens.lens_model import (
    AFOCAL,
    LensConfig,
    focal_to_cap,
    focal_to_contact_angle,
    focal_to_volume,
    hemisphere_focal,
    lensmaker,
    plano_convex_focal,
    radius_for_focal,
    theoretical_curve,
    volume_curve,
    volume_to_focal,
)

if TYPE_CHECKING:
    from pytest_mock import MockerFixture


def test_lensmaker() -> None:
    assert lensmaker(1.5, 10, 10) is AFOCAL
    assert lensmaker(2, 5, math.inf) == pytest.approx(5)
    assert lensmaker(1.33, 4.0625, math.inf) == pytest.approx(12.311, abs=1e-3)
    assert lensmaker(1.5, 10, -10) == pytest.approx(10)


def test_lensmaker_rejects_bad_input() -> None:
    with pytest.raises(LensDomainError):
        lensmaker(1.0, 5, math.inf)
    with pytest.raises(LensDomainError):
        lensmaker(1.5, 0, math.inf)


def test_plano_convex_focal() -> None:
    assert plano_convex_focal(2, 7) == pytest.approx(7)
    assert plano_convex_focal(1.33, 1.3244) == pytest.approx(4.013, abs=1e-3)
    assert plano_convex_focal(1.33, 1) == pytest.approx(3.0303, abs=1e-4)
    assert plano_convex_focal(1.33, 4.2) == lensmaker(1.33, 4.2, math.inf)


def test_radius_for_focal() -> None:
    assert radius_for_focal(2, 3) == pytest.approx(3)
    assert radius_for_focal(1.33, 12) == pytest.approx(3.96)
    assert radius_for_focal(1.33, 3) == pytest.approx(0.99)
    with pytest.raises(LensDomainError):
        radius_for_focal(1.33, -1)


@pytest.mark.parametrize(
    ("volume", "focal"),
    [(2 * math.pi / 3, 3.0303), (0.2, 12.16), (1.4, 3.156)],
)
def test_volume_to_focal(lens: LensConfig, volume: float, focal: float) -> None:
    assert volume_to_focal(lens, volume) == pytest.approx(focal, rel=1e-3)


def test_focal_to_volume(lens: LensConfig) -> None:
    assert focal_to_volume(lens, 12) == pytest.approx(0.2026, abs=5e-4)
    assert focal_to_volume(lens, hemisphere_focal(lens)) == pytest.approx(2 * math.pi / 3)


def test_focal_to_volume_flat_limit(lens: LensConfig) -> None:
    cap = focal_to_cap(lens, 1e9)
    assert 0 < cap.volume < 1e-8
    assert 0 < cap.contact_angle < 1e-8


def test_focal_to_volume_below_the_hemisphere_bound(lens: LensConfig) -> None:
    assert hemisphere_focal(lens) == pytest.approx(3.0303, abs=1e-4)
    with pytest.raises(UnreachableFocalError, match="unreachable focal length"):
        focal_to_volume(lens, 3.0)


def test_focal_to_volume_is_closed_form(lens: LensConfig, mocker: MockerFixture) -> None:
    spy = mocker.spy(cap_geometry, "sag_from_volume")
    focal_to_volume(lens, 7.5)
    assert spy.call_count == 0


def test_focal_to_contact_angle(lens: LensConfig) -> None:
    assert math.degrees(focal_to_contact_angle(lens, hemisphere_focal(lens))) == pytest.approx(90, abs=1e-5)
    assert math.degrees(focal_to_contact_angle(lens, 12)) == pytest.approx(14.62, abs=0.01)
    assert math.degrees(focal_to_contact_angle(lens, 4.013)) == pytest.approx(49.02, abs=0.02)


def test_focal_volume_roundtrip(lens: LensConfig, rng: np.random.Generator) -> None:
    # near the hemisphere df/dV vanishes, so the inverse is ill conditioned there
    for fraction in rng.uniform(1e-3, 0.9, 1000):
        volume = float(fraction) * hemisphere_volume(lens.diameter)
        assert focal_to_volume(lens, volume_to_focal(lens, volume)) == pytest.approx(volume, rel=1e-9)


def test_theoretical_curve_endpoints(lens: LensConfig) -> None:
    points = theoretical_curve(lens, 4, 12, 2)
    assert [p.focal_length for p in points] == [4, 12]
    assert points[0].volume == pytest.approx(focal_to_volume(lens, 4))
    assert points[1].volume == pytest.approx(0.2026, abs=5e-4)
    assert points[1].contact_angle == pytest.approx(14.62, abs=0.01)


def test_theoretical_curve_is_monotone(lens: LensConfig) -> None:
    points = theoretical_curve(lens, 4, 12, 100)
    volumes = [p.volume for p in points]
    assert all(0 < v < 2 * math.pi / 3 for v in volumes)
    assert all(b < a for a, b in zip(volumes, volumes[1:], strict=False))


@pytest.mark.parametrize(("f_min", "f_max", "steps"), [(3, 12, 10), (12, 4, 10), (4, 12, 1)])
def test_theoretical_curve_rejects_bad_ranges(lens: LensConfig, f_min: float, f_max: float, steps: int) -> None:
    with pytest.raises(LensDomainError):
        theoretical_curve(lens, f_min, f_max, steps)


def test_volume_curve(lens: LensConfig) -> None:
    points = volume_curve(lens, 0.1, 2, 20)
    assert points[0].volume == pytest.approx(0.1)
    assert points[-1].volume == pytest.approx(2)
    focals = [p.focal_length for p in points]
    assert all(b < a for a, b in zip(focals, focals[1:], strict=False))


@pytest.mark.parametrize("kwargs", [{"diameter": 0}, {"index": 1.0}, {"center_thickness": -0.1}])
def test_lens_config_validation(kwargs: dict[str, float]) -> None:
    with pytest.raises(LensDomainError):
        LensConfig(**kwargs)


@pytest.mark.parametrize(
    "config",
    [LensConfig(), LensConfig(diameter=3.5, index=1.42), LensConfig(diameter=0.5, index=1.9)],
)
def test_volume_to_focal_is_bounded_by_the_hemisphere(config: LensConfig) -> None:
    bound = hemisphere_focal(config)
    volumes = np.linspace(1e-3, 1, 1000) * hemisphere_volume(config.diameter)
    focals = np.array([volume_to_focal(config, float(v)) for v in volumes])
    assert np.all(focals >= bound - 1e-9)
    assert int(np.argmin(focals)) == len(volumes) - 1
    assert focals[-1] == pytest.approx(bound, rel=1e-12)


def test_focal_to_volume_is_monotone(lens: LensConfig) -> None:
    focals = np.linspace(hemisphere_focal(lens), 50, 1000)
    volumes = [focal_to_volume(lens, float(f)) for f in focals]
    assert volumes[0] == pytest.approx(hemisphere_volume(lens.diameter))
    assert all(b < a for a, b in zip(volumes, volumes[1:], strict=False))
