"""Unit tests for DQPT diagnostics."""

import math

import numpy as np
import pytest
from scipy import ndimage

from app.api.exceptions import GaplessModeException, InvalidArgumentException
from app.core.dqpt import (
    critical_momenta,
    critical_times,
    delta_criterion,
    delta_scan,
    detect_peaks,
    dominant_peaks,
    fisher_zero_family,
    fisher_zero_line,
    loschmidt_log_amplitude,
    post_quench_energy_range,
    rate_function,
    validate_times,
)
from app.core.model import build_grid, quasiparticle_energy
from app.entities.diagnostics import CriticalSet, RateSeries
from app.entities.params import QuenchSpec, SqueezeSpec


@pytest.fixture
def cross_rate(cross_quench, no_squeeze):
    """Rate function of the 1.5 -> 0.5 quench on N = 2000, t in [0, 5]."""
    return rate_function(cross_quench, no_squeeze, build_grid(2000), np.linspace(0.0, 5.0, 2000))


class TestRateFunction:
    """Test suite for the rate function and its peaks."""

    def test_starts_at_zero(self, cross_rate):
        """Test lambda(0) = 0."""
        assert cross_rate.values[0] == pytest.approx(0.0, abs=1e-14)

    def test_first_peak_at_critical_time(self, cross_rate, critical_time):
        """Test that the first peak sits at t_c within a few time steps."""
        assert cross_rate.peak_times
        tolerance = 8 * cross_rate.time_step
        assert cross_rate.peak_times[0] == pytest.approx(critical_time, abs=tolerance)

    def test_flip_sign_flips_values(self, cross_quench, no_squeeze):
        """Test that the opposite sign convention negates lambda and keeps peaks."""
        grid, times = build_grid(400), np.linspace(0.0, 4.0, 401)
        plain = rate_function(cross_quench, no_squeeze, grid, times)
        flipped = rate_function(cross_quench, no_squeeze, grid, times, flip_sign=True)
        np.testing.assert_allclose(flipped.values, -plain.values)
        assert flipped.flip_sign
        assert flipped.peak_times == plain.peak_times

    def test_universal_point_closed_form(self, intra_quench, universal_squeeze):
        """Test lambda = -(2/N) sum ln|cos(eps t)| at the maximally entangling squeeze."""
        grid = build_grid(400)
        times = np.linspace(0.0, 1.0, 51)
        series = rate_function(intra_quench, universal_squeeze, grid, times)
        eps = quasiparticle_energy(grid.momenta, intra_quench.post)
        expected = -(2.0 / 400) * np.sum(np.log(np.abs(np.cos(np.outer(times, eps)))), axis=1)
        np.testing.assert_allclose(series.values, expected, atol=1e-12)

    def test_universal_point_rate_rises_into_band(self, intra_quench, universal_squeeze):
        """Test monotonic growth before the critical band and a maximum inside it."""
        grid = build_grid(4000)
        times = np.linspace(0.0, 2.5, 1251)
        series = rate_function(intra_quench, universal_squeeze, grid, times)
        cs = critical_momenta(intra_quench, universal_squeeze)
        band = critical_times(cs, intra_quench, 0).intervals[0]
        dt = series.time_step
        before = series.values[times < band.t_min]
        assert np.all(np.diff(before) > 0)
        t_peak = times[int(np.argmax(series.values))]
        assert band.t_min - 2 * dt <= t_peak <= band.t_max + 2 * dt

    @pytest.mark.parametrize(
        "times",
        [[], [0.0, 0.0, 1.0], [0.0, 2.0, 1.0], [0.0, float("nan")], [[0.0, 1.0]]],
    )
    def test_invalid_times(self, times):
        """Test rejection of malformed time grids."""
        with pytest.raises(InvalidArgumentException):
            validate_times(times)


class TestLoschmidtLogAmplitude:
    """Test suite for the complex per-site Loschmidt log."""

    def test_real_part_is_negative_rate(self, cross_quench, complex_squeeze):
        """Test Re = -lambda."""
        grid, times = build_grid(100), np.linspace(0.0, 3.0, 31)
        log_amp = loschmidt_log_amplitude(cross_quench, complex_squeeze, grid, times)
        series = rate_function(cross_quench, complex_squeeze, grid, times)
        np.testing.assert_allclose(log_amp.real, -series.values, atol=1e-14)

    def test_null_quench_phase(self, null_quench, no_squeeze):
        """Test that the vacuum only accumulates its energy phase."""
        grid = build_grid(50)
        log_amp = loschmidt_log_amplitude(null_quench, no_squeeze, grid, [0.0, 0.5])
        eps = quasiparticle_energy(grid.momenta, null_quench.post)
        assert log_amp[0] == pytest.approx(0.0, abs=1e-15)
        assert log_amp[1].real == pytest.approx(0.0, abs=1e-14)
        assert log_amp[1].imag == pytest.approx((2.0 / 50) * np.sum(eps) * 0.5, abs=1e-12)


class TestPeaks:
    """Test suite for peak detection."""

    @pytest.fixture
    def two_bumps(self) -> RateSeries:
        t = np.linspace(0.0, 10.0, 1001)
        values = np.exp(-((t - 3.0) ** 2)) + 0.5 * np.exp(-((t - 7.0) ** 2))
        return RateSeries(times=t, values=values)

    def test_detect(self, two_bumps):
        """Test detection of both maxima."""
        assert detect_peaks(two_bumps, 1e-3) == pytest.approx([3.0, 7.0])

    def test_prominence_threshold(self, two_bumps):
        """Test that the threshold drops the smaller bump."""
        assert detect_peaks(two_bumps, 0.75) == pytest.approx([3.0])

    def test_invalid_prominence(self, two_bumps):
        """Test rejection of a non-positive threshold."""
        with pytest.raises(InvalidArgumentException):
            detect_peaks(two_bumps, 0.0)

    def test_dominant_peaks(self, two_bumps):
        """Test ordering of the most prominent peaks."""
        assert dominant_peaks(two_bumps, count=1) == pytest.approx([3.0])
        assert dominant_peaks(two_bumps, count=5) == pytest.approx([3.0, 7.0])

    def test_one_sided_kink_outranks_smooth_bump(self):
        """Test that a square-root drop that is not a local maximum is still found."""
        t = np.linspace(0.0, 4.0, 401)
        values = 0.3 * np.exp(-((t - 1.0) ** 2)) - np.sqrt(np.clip(t - 3.0, 0.0, None))
        series = RateSeries(times=t, values=values)
        assert detect_peaks(series, 1e-3) == pytest.approx([1.0])
        assert dominant_peaks(series, count=1) == pytest.approx([3.0])
        assert dominant_peaks(series, count=2, window=4) == pytest.approx([1.0, 3.0])

    def test_band_edges_at_universal_point(self, intra_quench, universal_squeeze):
        """Test the two dominant nonanalyticities at t_min and t_max of the critical band."""
        t_min, t_max = math.pi / 2.4, math.pi / 1.6
        times = np.linspace(0.0, 1.2 * t_max, 3000)
        series = rate_function(intra_quench, universal_squeeze, build_grid(4000), times)
        peaks = dominant_peaks(series, count=2)
        assert peaks == pytest.approx([t_min, t_max], abs=2 * series.time_step)

    def test_monotonic_series_has_none(self):
        """Test that a monotonic series has no interior peak."""
        t = np.linspace(0.0, 1.0, 11)
        assert detect_peaks(RateSeries(times=t, values=t), 1e-3) == []
        assert dominant_peaks(RateSeries(times=t, values=t)) == []


class TestFisherZeros:
    """Test suite for Fisher-zero lines."""

    def test_line_crosses_real_axis_at_critical_momentum(
        self, cross_quench, no_squeeze, critical_momentum, critical_time
    ):
        """Test the sign change of tau and t = t_c at k*."""
        k = [critical_momentum - 0.05, critical_momentum, critical_momentum + 0.05]
        line = fisher_zero_line(0, cross_quench, no_squeeze, k)
        left, middle, right = line.samples
        assert left.tau * right.tau < 0
        assert middle.tau == pytest.approx(0.0, abs=1e-9)
        assert middle.t == pytest.approx(critical_time, abs=1e-9)

    def test_higher_branch(self, cross_quench, no_squeeze, critical_momentum, critical_time):
        """Test t_n = (2n + 1) t_0."""
        line = fisher_zero_line(2, cross_quench, no_squeeze, [critical_momentum])
        assert line.samples[0].t == pytest.approx(5 * critical_time, abs=1e-9)

    def test_unbounded_samples(self, null_quench):
        """Test flagging where an overlap vanishes."""
        line = fisher_zero_line(
            0, null_quench, SqueezeSpec(r=math.pi / 2), np.linspace(0.2, 2.8, 5)
        )
        assert line.unbounded_count == 5
        assert line.bounded == []
        assert all(sample.tau is None and sample.t is None for sample in line.samples)

    def test_rejects_momenta_outside_interval(self, cross_quench, no_squeeze):
        """Test that k must lie strictly inside (0, pi)."""
        with pytest.raises(InvalidArgumentException):
            fisher_zero_line(0, cross_quench, no_squeeze, [0.0, 1.0])

    def test_family(self, intra_quench):
        """Test one line per squeezing strength."""
        lines = fisher_zero_family(0, intra_quench, [0.0, 0.3, 0.6], 0.0, [0.5, 1.5, 2.5])
        assert len(lines) == 3
        assert all(len(line.samples) == 3 for line in lines)


class TestCriticalMomenta:
    """Test suite for critical momenta and times."""

    def test_single_root_at_zero_squeeze(self, cross_quench, no_squeeze):
        """Test the analytic root cos k* = -(1 + h0 h1) / (h0 + h1)."""
        cs = critical_momenta(cross_quench, no_squeeze)
        assert len(cs.momenta) == 1
        assert math.cos(cs.momenta[0]) == pytest.approx(-0.875, abs=1e-10)
        assert cs.has_dqpt

    def test_no_root_inside_phase(self, intra_quench, no_squeeze):
        """Test that a quench within one phase has no DQPT."""
        cs = critical_momenta(intra_quench, no_squeeze)
        assert cs.momenta == []
        assert not cs.has_dqpt

    def test_universal_point_all_modes(self, intra_quench, universal_squeeze):
        """Test that every mode is critical at r = pi/4, phi = 0."""
        cs = critical_momenta(intra_quench, universal_squeeze)
        assert cs.all_modes_critical
        assert cs.momenta == []

    def test_critical_times(self, cross_quench, no_squeeze, critical_time):
        """Test t_c^n = (2n + 1) pi / (2 eps)."""
        cs = critical_times(critical_momenta(cross_quench, no_squeeze), cross_quench, 2)
        assert [entry.n for entry in cs.times] == [0, 1, 2]
        np.testing.assert_allclose(
            cs.sorted_times(), [critical_time, 3 * critical_time, 5 * critical_time], atol=1e-9
        )

    def test_critical_intervals(self, intra_quench, universal_squeeze):
        """Test the n = 0 band [pi/2.4, pi/1.6] of the all-critical quench."""
        cs = critical_times(critical_momenta(intra_quench, universal_squeeze), intra_quench, 1)
        first = cs.intervals[0]
        assert first.t_min == pytest.approx(math.pi / 2.4, abs=1e-9)
        assert first.t_max == pytest.approx(math.pi / 1.6, abs=1e-9)
        assert cs.intervals[1].t_min == pytest.approx(3 * math.pi / 2.4, abs=1e-9)

    def test_energy_range(self, intra_quench):
        """Test the extrema of the post-quench spectrum."""
        eps_min, eps_max = post_quench_energy_range(intra_quench.post)
        assert eps_min == pytest.approx(0.8, abs=1e-9)
        assert eps_max == pytest.approx(1.2, abs=1e-9)

    def test_gapless_band_raises(self, universal_squeeze):
        """Test that a gapless post-quench chain cannot bound the band."""
        q = QuenchSpec.from_values(0.8, 1.0, 1.0, 1.0)
        with pytest.raises(GaplessModeException):
            critical_times(critical_momenta(q, universal_squeeze), q, 0)

    def test_negative_branch_count(self, cross_quench):
        """Test rejection of n_max < 0."""
        with pytest.raises(InvalidArgumentException):
            critical_times(CriticalSet(), cross_quench, -1)


class TestDeltaCriterion:
    """Test suite for the (r, phi) DQPT criterion."""

    def test_zero_with_root(self, cross_quench, no_squeeze):
        """Test exact zero when the scan brackets a root."""
        assert delta_criterion(cross_quench, no_squeeze) == 0.0

    def test_positive_without_root(self, intra_quench, no_squeeze):
        """Test a strictly positive minimum without DQPT."""
        assert delta_criterion(intra_quench, no_squeeze) > 0.0

    def test_universal_point(self, intra_quench, universal_squeeze):
        """Test that the maximally entangling squeeze is critical."""
        assert delta_criterion(intra_quench, universal_squeeze) < 1e-12

    def test_scan_contains_universal_cell(self, intra_quench):
        """Test the (pi/4, 0) cell of a 9x9 scan."""
        delta_map = delta_scan(
            intra_quench,
            np.linspace(0.0, math.pi / 2, 9),
            np.linspace(-math.pi, math.pi, 9),
            resolution=512,
        )
        assert delta_map.delta.shape == (9, 9)
        assert delta_map.delta[4, 4] < 1e-6
        assert delta_map.delta[0, 4] > 0.0
        assert delta_map.zero_mask()[4, 4]

    def test_scan_weak_anisotropy(self, xx_quench):
        """Test that squeezing along phi = pi/2 removes the unsqueezed DQPT."""
        delta_map = delta_scan(xx_quench, [0.0, 0.645], [math.pi / 2], resolution=1024)
        assert delta_map.delta[0, 0] == 0.0
        assert delta_map.delta[1, 0] > 0.1

    def test_intra_phase_map(self, intra_quench):
        """Test two extended DQPT regions and none without squeezing for 0.8 -> 0.2."""
        r_grid = np.linspace(0.0, math.pi / 2, 13)
        phi_grid = np.linspace(-math.pi / 2, math.pi / 2, 13)
        delta_map = delta_scan(intra_quench, r_grid, phi_grid, resolution=1024)
        mask = delta_map.zero_mask()

        assert np.all(delta_map.delta[0] > 0.0)
        assert not mask[:3].any()
        assert mask[6, 6]
        labels, count = ndimage.label(mask)
        sizes = sorted(np.bincount(labels.ravel())[1:], reverse=True)
        assert count >= 2
        assert sizes[0] >= 8 and sizes[1] >= 8

    def test_weak_anisotropy_phase_map(self, xx_quench):
        """Test a DQPT everywhere at r = 0 and DQPT-free interior cells for 0.2 -> 0.8."""
        r_grid = np.linspace(0.0, math.pi / 2, 13)
        phi_grid = np.linspace(-math.pi / 2, math.pi / 2, 13)
        delta_map = delta_scan(xx_quench, r_grid, phi_grid, resolution=1024)

        assert np.all(delta_map.delta[0] == 0.0)
        assert delta_map.delta[1:-1, 1:-1].max() > 1e-2
        assert delta_map.delta[5, 11] > 0.2

    def test_parallel_scan_matches_serial(self, intra_quench):
        """Test that a process pool gives the same map."""
        r_grid = np.linspace(0.0, math.pi / 2, 4)
        phi_grid = np.linspace(-math.pi, math.pi, 3)
        serial = delta_scan(intra_quench, r_grid, phi_grid, workers=1, resolution=256)
        parallel = delta_scan(intra_quench, r_grid, phi_grid, workers=2, resolution=256)
        np.testing.assert_array_equal(serial.delta, parallel.delta)

    def test_unsorted_axis(self, intra_quench):
        """Test rejection of unsorted grids."""
        with pytest.raises(InvalidArgumentException):
            delta_scan(intra_quench, [0.5, 0.1], [0.0])
