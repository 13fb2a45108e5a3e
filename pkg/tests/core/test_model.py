"""Unit tests for the XY-chain single-particle model."""

import math

import numpy as np
import pytest

from app.api.exceptions import InvalidArgumentException
from app.core.model import (
    bloch_matrix,
    bogoliubov_angle,
    build_grid,
    mode_static_data,
    phs_image,
    quasiparticle_energy,
)
from app.entities.params import XYParams


class TestBuildGrid:
    """Test suite for momentum grids."""

    def test_small_grid(self):
        """Test N = 4 momenta."""
        grid = build_grid(4)
        np.testing.assert_allclose(grid.momenta, [math.pi / 4, 3 * math.pi / 4])

    def test_momenta_inside_open_interval(self):
        """Test that momenta avoid 0 and pi."""
        k = build_grid(2000).momenta
        assert k.size == 1000
        assert k[0] > 0.0 and k[-1] < math.pi

    @pytest.mark.parametrize("n_sites", [0, 3, -2, 7])
    def test_invalid_sizes(self, n_sites):
        """Test rejection of odd or non-positive N."""
        with pytest.raises(InvalidArgumentException) as exc_info:
            build_grid(n_sites)
        assert exc_info.value.details["field"] == "n_sites"


class TestBogoliubovAngle:
    """Test suite for the Bogoliubov angle."""

    def test_reference_value(self):
        """Test theta at k = pi/3, h = 0.5, gamma = 1."""
        theta = bogoliubov_angle(math.pi / 3, XYParams(h=0.5, gamma=1.0))
        assert theta == pytest.approx(0.5 * math.atan2(math.sqrt(3) / 2, 1.0), abs=1e-14)
        assert theta == pytest.approx(0.356862, abs=2e-6)

    def test_ising_point_is_half_momentum(self):
        """Test theta = k/2 at h = 0, gamma = 1."""
        k = np.linspace(0.1, 3.0, 7)
        np.testing.assert_allclose(bogoliubov_angle(k, XYParams(h=0.0, gamma=1.0)), k / 2)

    def test_degenerate_point(self):
        """Test that the angle is 0 where both components vanish."""
        assert bogoliubov_angle(0.0, XYParams(h=-1.0, gamma=1.0)) == 0.0

    def test_vectorised(self):
        """Test array input returns an array of the same shape."""
        k = np.linspace(0.1, 3.0, 12).reshape(3, 4)
        assert bogoliubov_angle(k, XYParams(h=1.5, gamma=1.0)).shape == (3, 4)


class TestQuasiparticleEnergy:
    """Test suite for quasiparticle energies."""

    def test_band_edges(self):
        """Test eps at k = 0 and k = pi."""
        p = XYParams(h=1.5, gamma=1.0)
        assert quasiparticle_energy(0.0, p) == pytest.approx(2.5)
        assert quasiparticle_energy(math.pi, p) == pytest.approx(0.5)

    def test_critical_energy(self):
        """Test eps(k*) for the post-quench chain h = 0.5 at cos k = -0.875."""
        k = math.acos(-0.875)
        assert quasiparticle_energy(k, XYParams(h=0.5, gamma=1.0)) == pytest.approx(
            math.sqrt(0.375), abs=1e-14
        )

    def test_bloch_spectrum(self, rng):
        """Test that the Bloch matrix has eigenvalues +-eps_k."""
        for _ in range(20):
            p = XYParams(h=float(rng.uniform(0.1, 2.0)), gamma=float(rng.uniform(0.1, 1.0)))
            k = float(rng.uniform(0.0, math.pi))
            eps = quasiparticle_energy(k, p)
            spectrum = np.linalg.eigvalsh(bloch_matrix(k, p))
            np.testing.assert_allclose(spectrum, [-eps, eps], atol=1e-12)

    def test_particle_hole_symmetry(self, rng):
        """Test sigma^x conj(H(k)) sigma^x = -H(-k)."""
        for _ in range(20):
            p = XYParams(h=float(rng.uniform(-2.0, 2.0)), gamma=float(rng.uniform(-1.0, 1.0)))
            k = float(rng.uniform(-math.pi, math.pi))
            np.testing.assert_allclose(
                phs_image(bloch_matrix(k, p)), -bloch_matrix(-k, p), atol=1e-15
            )

    def test_particle_hole_image_is_not_minus_h(self):
        """Test that the image differs from -H(k) when gamma sin k != 0."""
        h = bloch_matrix(0.7, XYParams(h=0.3, gamma=0.6))
        assert not np.allclose(phs_image(h), -h)

    def test_mode_static_data(self):
        """Test the bundled record."""
        data = mode_static_data(math.pi / 2, XYParams(h=0.0, gamma=1.0))
        assert data.theta == pytest.approx(math.pi / 4)
        assert data.epsilon == pytest.approx(1.0)
        assert not data.is_gapless

    def test_gapless_mode(self):
        """Test that a gap closing is reported."""
        data = mode_static_data(0.0, XYParams(h=-1.0, gamma=1.0))
        assert data.is_gapless
