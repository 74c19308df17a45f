"""Tests for measurement fits, the volume model and the theory comparison."""

from __future__ import annotations

import math

import numpy as np
import pytest

from liquilens.calibration import (
    NOMINAL_CALIBRATION,
    MeasurementSeries,
    VolumeCalibration,
    compare_table,
    endpoint_discrepancy,
    fit_volume_model,
    linear_fit,
    measured_focal,
    measured_focal_lengths,
    predict_theta,
    rms_residual,
    validate_points,
)
from liquilens.exceptions import FitError, LensDomainError, MeasurementError
from liquilens.lens_model import LensConfig

VOLUMES = (200.0, 400.0, 700.0, 1000.0, 1200.0, 1400.0)


def _sse(series: MeasurementSeries, slope: float, intercept: float) -> float:
    residuals = series.angles - (slope * series.volumes + intercept)
    return float(np.dot(residuals, residuals))


def test_sample_dataset(sample: MeasurementSeries) -> None:
    assert len(sample) == 6
    assert sample.points[0] == (200, 14.25)
    assert sample.points[-1] == (1400, 49.02)


def test_series_invariants() -> None:
    with pytest.raises(MeasurementError) as excinfo:
        MeasurementSeries(points=((200, 14.25), (200, 20.0), (300, 95.0)))
    problems = excinfo.value.problems
    assert any("row 2" in p and "does not increase" in p for p in problems)
    assert any("row 3" in p and "outside (0, 90)" in p for p in problems)
    with pytest.raises(MeasurementError, match="at least 2 points"):
        MeasurementSeries(points=((200, 14.25),))


def test_validate_points_labels() -> None:
    problems = validate_points([(1.0, 10.0), (0.5, 10.0)], label=lambda i: f"line {i + 2}")
    assert problems == ["line 3: volume 0.5 does not increase from 1.0"]


def test_linear_fit_sample(sample: MeasurementSeries) -> None:
    fit = linear_fit(sample)
    assert fit.slope == pytest.approx(0.0281, abs=1e-4)
    assert fit.intercept == pytest.approx(9.67, abs=0.01)
    assert fit.r_squared == pytest.approx(0.994, abs=1e-3)
    assert fit.r_squared > 0.98
    assert sum(fit.residuals) == pytest.approx(0, abs=1e-9)


def test_linear_fit_two_points() -> None:
    fit = linear_fit(MeasurementSeries(points=((100, 10.0), (300, 30.0))))
    assert fit.slope == pytest.approx(0.1)
    assert fit.intercept == pytest.approx(0)
    assert fit.r_squared == pytest.approx(1)
    assert fit.predict(200) == pytest.approx(20)


def test_linear_fit_is_optimal(sample: MeasurementSeries) -> None:
    fit = linear_fit(sample)
    best = _sse(sample, fit.slope, fit.intercept)
    for d_slope in (-1e-6, 0, 1e-6):
        for d_intercept in (-1e-6, 0, 1e-6):
            assert _sse(sample, fit.slope + d_slope, fit.intercept + d_intercept) >= best


def test_linear_fit_affine_equivariance(sample: MeasurementSeries) -> None:
    fit = linear_fit(sample)
    shifted = linear_fit(MeasurementSeries(points=tuple((v, a + 5.0) for v, a in sample.points)))
    assert shifted.slope == pytest.approx(fit.slope, rel=1e-9)
    assert shifted.intercept == pytest.approx(fit.intercept + 5.0, rel=1e-9)
    rescaled = linear_fit(MeasurementSeries(points=tuple((v * 1000, a) for v, a in sample.points)))
    assert rescaled.slope == pytest.approx(fit.slope / 1000, rel=1e-9)
    assert rescaled.r_squared == pytest.approx(fit.r_squared, rel=1e-9)


def test_linear_fit_is_idempotent(sample: MeasurementSeries) -> None:
    fit = linear_fit(sample)
    refit = linear_fit(MeasurementSeries(points=tuple((v, fit.predict(v)) for v in sample.volumes.tolist())))
    assert refit.slope == pytest.approx(fit.slope, rel=1e-9)
    assert refit.intercept == pytest.approx(fit.intercept, rel=1e-9)
    assert refit.r_squared == pytest.approx(1)


def test_volume_calibration() -> None:
    calibration = VolumeCalibration(scale=0.002, dead_volume=100)
    assert calibration.effective_volume(600) == pytest.approx(1.0)
    assert calibration.pumped_volume(1.0) == pytest.approx(600)
    assert calibration.pumped_range(2) == pytest.approx((100, 100 + 2 * math.pi / 3 / 0.002))
    with pytest.raises(LensDomainError):
        VolumeCalibration(scale=0)


def test_predict_theta() -> None:
    assert predict_theta(NOMINAL_CALIBRATION, 2, 200) == pytest.approx(14.43, abs=0.01)
    assert predict_theta(NOMINAL_CALIBRATION, 2, 1400) == pytest.approx(73.75, abs=0.05)
    with pytest.raises(LensDomainError):
        predict_theta(VolumeCalibration(scale=1e-3, dead_volume=150), 2, 150)


def test_fit_recovers_synthetic_model() -> None:
    points = tuple((v, predict_theta(NOMINAL_CALIBRATION, 2, v)) for v in VOLUMES)
    calibration = fit_volume_model(MeasurementSeries(points=points), 2)
    assert calibration.scale == pytest.approx(1e-3, rel=0.01)
    assert calibration.dead_volume == pytest.approx(0, abs=1)
    assert calibration.rms_residual < 0.01


def test_fit_recovers_dead_volume() -> None:
    truth = VolumeCalibration(scale=2e-4, dead_volume=120)
    points = tuple((v, predict_theta(truth, 2, v)) for v in VOLUMES)
    calibration = fit_volume_model(MeasurementSeries(points=points), 2)
    assert calibration.scale == pytest.approx(2e-4, rel=0.01)
    assert calibration.dead_volume == pytest.approx(120, abs=1)


def test_fit_beats_the_nominal_reading(sample: MeasurementSeries) -> None:
    calibration = fit_volume_model(sample, 2)
    nominal = rms_residual(sample, 2, NOMINAL_CALIBRATION)
    assert calibration.rms_residual == pytest.approx(rms_residual(sample, 2, calibration))
    assert calibration.rms_residual < nominal
    assert calibration.scale > 0
    assert 0 <= calibration.dead_volume < 200


def test_fit_without_feasible_model(sample: MeasurementSeries) -> None:
    with pytest.raises(FitError):
        fit_volume_model(sample, 1e-3)


def test_rms_residual_outside_the_regime(sample: MeasurementSeries) -> None:
    assert rms_residual(sample, 2, VolumeCalibration(scale=1)) == math.inf


def test_measured_focal_lengths(sample: MeasurementSeries, lens: LensConfig) -> None:
    focals = measured_focal_lengths(sample, lens)
    assert [v for v, _ in focals] == list(VOLUMES)
    assert focals[-1][1] == pytest.approx(4.013, abs=1e-3)
    assert focals[0][1] == pytest.approx(12.31, abs=0.01)
    assert all(b < a for (_, a), (_, b) in zip(focals, focals[1:], strict=False))


def test_endpoint_discrepancy(sample: MeasurementSeries, lens: LensConfig) -> None:
    short, long = endpoint_discrepancy(sample, lens)
    assert short.theta == 49.02
    assert short.reproduced
    assert short.relative_delta == pytest.approx(0.016, abs=1e-3)
    assert long.theta == 14.25
    assert not long.reproduced
    assert long.computed_focal == pytest.approx(12.3, abs=0.05)
    assert "NOT reproduced" in long.describe()
    assert 1.41 <= long.matching_index <= 1.42
    refocused = measured_focal(LensConfig(index=1.42), long.theta)
    assert abs(refocused - long.reported_focal) / long.reported_focal < 0.02


def test_compare_table_nominal(sample: MeasurementSeries, lens: LensConfig) -> None:
    table = compare_table(sample, lens)
    assert table.fitted is None
    assert table.nominal == NOMINAL_CALIBRATION
    assert all(row.theta_fitted is None for row in table.rows)
    assert table.rows[0].theta_theory == pytest.approx(14.25, abs=0.5)
    deltas = [row.theta_delta for row in table.rows]
    expected = [0.18, 5.4, 17.1, 21.6, 24.1, 24.7]
    assert deltas == pytest.approx(expected, abs=0.1)
    assert all(d > 0 for d in deltas[1:])
    assert all(b >= a for a, b in zip(deltas[1:], deltas[2:], strict=False))
    assert table.rows[-1].f_meas == pytest.approx(4.013, abs=1e-3)
    assert len(table.endpoints) == 2


def test_compare_table_fitted(sample: MeasurementSeries, lens: LensConfig) -> None:
    calibration = fit_volume_model(sample, lens.diameter)
    table = compare_table(sample, lens, calibration)
    assert table.fitted == calibration
    fitted = np.array([row.theta_fitted for row in table.rows])
    assert math.sqrt(np.mean((fitted - sample.angles) ** 2)) == pytest.approx(calibration.rms_residual)


def test_compare_table_marks_rows_outside_the_regime(lens: LensConfig) -> None:
    series = MeasurementSeries(points=((200, 14.25), (3000, 60.0)))
    table = compare_table(series, lens)
    assert table.rows[0].note == ""
    assert table.rows[1].theta_theory is None
    assert table.rows[1].f_theory is None
    assert "exceeds hemispherical regime" in table.rows[1].note
    assert table.rows[1].f_meas > 0


def test_compare_table_focal_deltas(sample: MeasurementSeries, lens: LensConfig) -> None:
    table = compare_table(sample, lens)
    for row in table.rows:
        assert row.f_delta == pytest.approx(row.f_theory - row.f_meas)
        assert row.f_delta_relative == pytest.approx(row.f_delta / row.f_meas)
    first, last = table.rows[0], table.rows[-1]
    assert first.f_delta == pytest.approx(12.1555 - 12.3104, abs=2e-3)
    assert last.f_delta == pytest.approx(3.156 - 4.013, abs=2e-3)
    assert last.f_delta_relative == pytest.approx(-0.2136, abs=1e-3)


def test_compare_table_has_no_focal_delta_outside_the_regime(lens: LensConfig) -> None:
    row = compare_table(MeasurementSeries(points=((200, 14.25), (3000, 60.0))), lens).rows[1]
    assert row.f_delta is None
    assert row.f_delta_relative is None
    assert row.theta_delta is None


@pytest.mark.parametrize("k", [0.1, 10.0])
def test_fit_volume_model_unit_covariance(sample: MeasurementSeries, k: float) -> None:
    calibration = fit_volume_model(sample, 2)
    rescaled = MeasurementSeries(points=tuple((volume * k, angle) for volume, angle in sample.points))
    refit = fit_volume_model(rescaled, 2)
    assert refit.scale == pytest.approx(calibration.scale / k, rel=1e-5)
    assert refit.dead_volume == pytest.approx(calibration.dead_volume * k, rel=1e-4, abs=1e-5 * k * VOLUMES[-1])
    assert refit.rms_residual == pytest.approx(calibration.rms_residual, rel=1e-9)
    assert linear_fit(rescaled).slope == pytest.approx(linear_fit(sample).slope / k, rel=1e-9)
    assert linear_fit(rescaled).r_squared == pytest.approx(linear_fit(sample).r_squared, rel=1e-9)
