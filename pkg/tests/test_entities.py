"""Unit tests for domain entities."""

import math
from unittest.mock import patch

import numpy as np
import pytest
from pydantic import ValidationError

from app.config import settings
from app.entities.diagnostics import (
    CriticalSet,
    DeltaMap,
    FisherZeroLine,
    FisherZeroSample,
    RateSeries,
)
from app.entities.modes import ModePairState, MomentumGrid
from app.entities.observables import EntropyProfile, WindingSeries
from app.entities.oracle import CheckResult, CheckStatus, ValidationReport
from app.entities.params import UNIVERSAL_R, QuenchSpec, SqueezeSpec, XYParams, canonical_angle


class TestParams:
    """Test suite for parameter entities."""

    def test_canonical_angle(self):
        """Test reduction to (-pi, pi]."""
        assert canonical_angle(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
        assert canonical_angle(-math.pi) == pytest.approx(math.pi)
        assert canonical_angle(math.pi) == pytest.approx(math.pi)
        assert canonical_angle(0.25) == 0.25

    def test_negative_strength_folds_into_direction(self):
        """Test that (-r, phi) becomes (r, phi + pi)."""
        s = SqueezeSpec(r=-0.5, phi=0.0)

        assert s.r == 0.5
        assert s.phi == pytest.approx(math.pi)

    def test_xi(self):
        """Test the complex squeezing parameter."""
        s = SqueezeSpec(r=0.5, phi=math.pi / 2)
        assert s.xi == pytest.approx(0.5j)

    def test_phs_predicate(self):
        """Test that only real xi preserves particle-hole symmetry."""
        assert SqueezeSpec(r=0.7, phi=0.0).preserves_phs
        assert SqueezeSpec(r=0.7, phi=math.pi).preserves_phs
        assert SqueezeSpec(r=0.0, phi=1.0).preserves_phs
        assert not SqueezeSpec(r=0.7, phi=math.pi / 3).preserves_phs

    def test_phs_predicate_uses_setting(self):
        """Test that the particle-hole tolerance comes from settings.PHS_TOL."""
        nearly_real = SqueezeSpec(r=0.7, phi=1e-4)
        assert not nearly_real.preserves_phs
        with patch.object(settings, "PHS_TOL", 1e-3):
            assert nearly_real.preserves_phs

    def test_universal_point(self):
        """Test detection of r = pi/4, phi = 0."""
        assert SqueezeSpec(r=UNIVERSAL_R).is_universal_point
        assert not SqueezeSpec(r=UNIVERSAL_R, phi=0.1).is_universal_point

    def test_conjugate(self):
        """Test that conjugation flips the direction."""
        s = SqueezeSpec(r=0.5, phi=math.pi / 3).conjugate()
        assert s.phi == pytest.approx(-math.pi / 3)
        assert s.r == 0.5

    def test_non_finite_rejected(self):
        """Test that NaN and infinity are rejected."""
        with pytest.raises(ValidationError):
            XYParams(h=float("nan"), gamma=1.0)
        with pytest.raises(ValidationError):
            SqueezeSpec(r=float("inf"))

    def test_frozen(self):
        """Test that parameter objects are immutable and hashable."""
        p = XYParams(h=1.0, gamma=1.0)
        with pytest.raises(ValidationError):
            p.h = 2.0
        assert hash(QuenchSpec(pre=p, post=p)) == hash(QuenchSpec(pre=p, post=p))

    def test_null_quench(self):
        """Test is_null."""
        assert QuenchSpec.from_values(1.0, 0.5, 1.0, 0.5).is_null
        assert not QuenchSpec.from_values(1.5, 1.0, 0.5, 1.0).is_null


class TestModes:
    """Test suite for momentum-space entities."""

    def test_grid_momenta(self):
        """Test the antiperiodic momenta (2m - 1) pi / N."""
        grid = MomentumGrid(n_sites=4)

        assert grid.size == 2
        np.testing.assert_allclose(grid.momenta, [math.pi / 4, 3 * math.pi / 4])
        assert grid.spacing == pytest.approx(math.pi / 2)

    def test_grid_rejects_odd(self):
        """Test that odd chains are rejected."""
        with pytest.raises(ValidationError):
            MomentumGrid(n_sites=5)
        with pytest.raises(ValidationError):
            MomentumGrid(n_sites=0)

    def test_pair_state_normalisation(self):
        """Test that pair states must be normalised."""
        state = ModePairState(a0=complex(0.6), a1=complex(0.0, 0.8))
        np.testing.assert_allclose(state.as_vector(), [0.6, 0.8j])

        with pytest.raises(ValidationError):
            ModePairState(a0=complex(1.0), a1=complex(1.0))


class TestDiagnostics:
    """Test suite for diagnostic entities."""

    def test_rate_series_shapes(self):
        """Test shape and ordering validation."""
        series = RateSeries(times=np.array([0.0, 0.5, 1.0]), values=np.zeros(3))
        assert series.time_step == pytest.approx(0.5)

        with pytest.raises(ValidationError):
            RateSeries(times=np.array([0.0, 1.0]), values=np.zeros(3))
        with pytest.raises(ValidationError):
            RateSeries(times=np.array([0.0, 1.0, 1.0]), values=np.zeros(3))

    def test_with_peaks(self):
        """Test that with_peaks returns a copy."""
        series = RateSeries(times=np.array([0.0, 1.0]), values=np.zeros(2))
        peaked = series.with_peaks([0.5])

        assert peaked.peak_times == [0.5]
        assert series.peak_times == []

    def test_fisher_line_counts(self):
        """Test bounded and unbounded sample bookkeeping."""
        line = FisherZeroLine(
            n=0,
            samples=[
                FisherZeroSample(k=0.1, tau=0.2, t=1.0),
                FisherZeroSample(k=0.2, unbounded=True),
            ],
        )
        assert len(line.bounded) == 1
        assert line.unbounded_count == 1

    def test_critical_set(self):
        """Test has_dqpt."""
        assert not CriticalSet().has_dqpt
        assert CriticalSet(momenta=[0.5]).has_dqpt
        assert CriticalSet(all_modes_critical=True).has_dqpt

    def test_delta_map_shape(self):
        """Test that delta must be (len(r), len(phi))."""
        delta_map = DeltaMap(
            r_values=np.zeros(2), phi_values=np.zeros(3), delta=np.array([[0, 1, 1], [1, 0, 1.0]])
        )
        assert delta_map.zero_mask().sum() == 2

        with pytest.raises(ValidationError):
            DeltaMap(r_values=np.zeros(2), phi_values=np.zeros(3), delta=np.zeros((3, 2)))


class TestObservables:
    """Test suite for observable entities."""

    def test_jump_times(self):
        """Test times of winding changes."""
        series = WindingSeries(
            times=np.array([0.0, 1.0, 2.0, 3.0]),
            nu=np.array([0, 0, 1, 1]),
            residue=np.zeros(4),
        )
        np.testing.assert_allclose(series.jump_times(), [2.0])

    def test_entropy_argmax(self):
        """Test argmax momentum."""
        profile = EntropyProfile(
            momenta=np.array([0.1, 0.2, 0.3]), entropy=np.array([0.1, 0.6, 0.2])
        )
        assert profile.argmax == 0.2


class TestValidationReport:
    """Test suite for report entities."""

    def test_pass_alias(self):
        """Test that check results serialise with a 'pass' key."""
        check = CheckResult(name="x", max_abs_error=0.0, tolerance=1.0, passed=True)
        data = check.model_dump(by_alias=True)

        assert data["pass"] is True
        assert "passed" not in data

    def test_overall_pass_ignores_optional_checks(self):
        """Test that only required checks decide the outcome."""
        report = ValidationReport(
            config={},
            per_check=[
                CheckResult(name="a", max_abs_error=0.0, tolerance=1.0, passed=True),
                CheckResult(
                    name="b",
                    max_abs_error=2.0,
                    tolerance=1.0,
                    passed=False,
                    status=CheckStatus.FAILED,
                    required=False,
                ),
            ],
        )
        assert report.overall_pass
        assert report.to_dict()["overall_pass"] is True
        assert report.to_dict()["per_check"][1]["status"] == "failed"
