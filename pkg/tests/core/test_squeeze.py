"""Unit tests for double-mode squeezing."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from app.api.exceptions import InvalidArgumentException
from app.core.squeeze import (
    pairing_amplitude,
    pairing_table,
    phs_conjugate_matrix,
    squeeze_generator,
    squeeze_matrix,
    squeeze_vacuum,
)
from app.entities.params import SqueezeSpec, XYParams

ISING = XYParams(h=0.0, gamma=1.0)


class TestSqueezeMatrix:
    """Test suite for the 2x2 pair squeeze."""

    def test_identity_at_zero(self):
        """Test S(0) = I."""
        np.testing.assert_allclose(squeeze_matrix(SqueezeSpec()), np.eye(2), atol=1e-15)

    def test_unitary_with_unit_determinant(self, rng):
        """Test unitarity and det = 1 for random squeezes."""
        for r, phi in rng.uniform(-math.pi, math.pi, size=(20, 2)):
            u = squeeze_matrix(SqueezeSpec(r=float(r), phi=float(phi)))
            np.testing.assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-14)
            assert np.linalg.det(u) == pytest.approx(1.0, abs=1e-14)

    def test_reference_entries(self):
        """Test entries at r = 0.5, phi = 0."""
        u = squeeze_matrix(SqueezeSpec(r=0.5))
        assert u[0, 1].real == pytest.approx(math.sin(0.5))
        assert u[1, 0].real == pytest.approx(-0.479425538604203)

    def test_periodicity(self, complex_squeeze):
        """Test S(r + 2pi) = S(r)."""
        shifted = SqueezeSpec(r=complex_squeeze.r + 2 * math.pi, phi=complex_squeeze.phi)
        np.testing.assert_allclose(
            squeeze_matrix(shifted), squeeze_matrix(complex_squeeze), atol=1e-14
        )


class TestSqueezeVacuum:
    """Test suite for squeezed pair vacua."""

    def test_universal_point(self, universal_squeeze):
        """Test the maximally entangled pair state."""
        state = squeeze_vacuum(universal_squeeze)
        assert state.a0 == pytest.approx(1 / math.sqrt(2))
        assert state.a1 == pytest.approx(-1 / math.sqrt(2))

    def test_generator_exponential(self, complex_squeeze):
        """Test exp(M) applied to the vacuum."""
        evolved = expm(squeeze_generator(complex_squeeze)) @ np.array([1.0, 0.0])
        np.testing.assert_allclose(evolved, squeeze_vacuum(complex_squeeze).as_vector(), atol=1e-14)

    def test_generator_square(self, complex_squeeze):
        """Test M^2 = -r^2 I."""
        m = squeeze_generator(complex_squeeze)
        np.testing.assert_allclose(m @ m, -(complex_squeeze.r ** 2) * np.eye(2), atol=1e-15)


class TestPhsConjugate:
    """Test suite for the particle-hole image of the squeeze."""

    def test_real_xi_is_invariant(self):
        """Test that real xi reproduces S."""
        s = SqueezeSpec(r=0.7)
        np.testing.assert_allclose(phs_conjugate_matrix(s), squeeze_matrix(s), atol=1e-15)

    def test_complex_xi_maps_to_conjugate(self, complex_squeeze):
        """Test that the image is the squeeze of conj(xi)."""
        np.testing.assert_allclose(
            phs_conjugate_matrix(complex_squeeze),
            squeeze_matrix(complex_squeeze.conjugate()),
            atol=1e-15,
        )
        assert not np.allclose(
            phs_conjugate_matrix(complex_squeeze), squeeze_matrix(complex_squeeze)
        )

    def test_image_creates_squeezed_vacuum(self, complex_squeeze):
        """Test that the first column is the squeezed vacuum."""
        column = phs_conjugate_matrix(complex_squeeze) @ np.array([1.0, 0.0])
        np.testing.assert_allclose(column, squeeze_vacuum(complex_squeeze).as_vector(), atol=1e-15)


class TestPairingAmplitude:
    """Test suite for real-space pairing amplitudes."""

    def test_ising_closed_form(self):
        """Test J_d = -(-1)^d / (4d) at h = 0, gamma = 1."""
        assert pairing_amplitude(1, ISING) == pytest.approx(0.25, abs=1e-9)
        assert pairing_amplitude(2, ISING) == pytest.approx(-0.125, abs=1e-9)
        assert pairing_amplitude(3, ISING) == pytest.approx(1 / 12, abs=1e-9)

    @pytest.mark.parametrize("d", [0, -1, 1.5])
    def test_invalid_separation(self, d):
        """Test rejection of non-positive or fractional separations."""
        with pytest.raises(InvalidArgumentException):
            pairing_amplitude(d, ISING)

    def test_decay_in_paramagnet(self):
        """Test that pairing decays with distance away from criticality."""
        p = XYParams(h=3.0, gamma=1.0)
        values = [abs(pairing_amplitude(d, p)) for d in (1, 3, 6)]
        assert values[0] > values[1] > values[2]
        assert pairing_amplitude(1, p) == pytest.approx(1 / 24, abs=1e-9)
        assert pairing_amplitude(2, p) == pytest.approx(-1 / 144, abs=1e-9)

    def test_table(self):
        """Test the (d, J_d) table."""
        table = pairing_table(3, ISING)
        assert [d for d, _ in table] == [1, 2, 3]
        assert table[0][1] == pytest.approx(0.25, abs=1e-9)

    def test_table_requires_positive_range(self):
        """Test d_max validation."""
        with pytest.raises(InvalidArgumentException):
            pairing_table(0, ISING)
