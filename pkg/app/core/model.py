"""
Static single-particle data of the transverse-field XY chain.

After Jordan-Wigner and Fourier transformation each (k, -k) pair is governed by
the Bloch matrix

    H_k = -(h + cos k) sigma^z - gamma sin k sigma^y

with spectrum +/- epsilon_k, and diagonalised by the Bogoliubov angle theta_k.
Functions accept scalars or numpy arrays of momenta.
"""

from typing import Union

import numpy as np

from app.api.exceptions import InvalidArgumentException
from app.entities.modes import ModeStaticData, MomentumGrid
from app.entities.params import XYParams
from app.utils.logger import get_logger

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def build_grid(n_sites: int) -> MomentumGrid:
    """
    Build the positive-momentum grid of an N-site ring.

    Args:
        n_sites: Chain length N (even, >= 2)

    Returns:
        MomentumGrid with momenta (2m - 1) pi / N, m = 1..N/2

    Raises:
        InvalidArgumentException: If n_sites is odd or not positive
    """
    if isinstance(n_sites, bool) or int(n_sites) != n_sites or n_sites < 2 or n_sites % 2:
        raise InvalidArgumentException(
            f"n_sites must be an even integer >= 2, got {n_sites}", field="n_sites"
        )
    grid = MomentumGrid(n_sites=int(n_sites))
    logger.debug(f"Built momentum grid with {grid.size} modes for N={n_sites}")
    return grid


def _components(k: ArrayLike, p: XYParams):
    return p.h + np.cos(k), p.gamma * np.sin(k)


def bogoliubov_angle(k: ArrayLike, p: XYParams) -> ArrayLike:
    """
    Bogoliubov angle theta_k = atan2(gamma sin k, h + cos k) / 2.

    The branch lies in (-pi/2, pi/2]; at the degenerate point where both
    components vanish the angle is 0.
    """
    z, y = _components(k, p)
    theta = 0.5 * np.arctan2(y, z)
    degenerate = (z == 0.0) & (y == 0.0)
    if np.ndim(theta) == 0:
        return 0.0 if bool(degenerate) else float(theta)
    return np.where(degenerate, 0.0, theta)


def quasiparticle_energy(k: ArrayLike, p: XYParams) -> ArrayLike:
    """Quasiparticle energy epsilon_k = sqrt((h + cos k)^2 + gamma^2 sin^2 k)."""
    z, y = _components(k, p)
    energy = np.hypot(z, y)
    return float(energy) if np.ndim(energy) == 0 else energy


def bloch_matrix(k: float, p: XYParams) -> np.ndarray:
    """
    2x2 Bloch Hamiltonian of the pair (k, -k).

    Args:
        k: Momentum
        p: Hamiltonian parameters

    Returns:
        Hermitian matrix -(h + cos k) sigma^z - gamma sin k sigma^y
    """
    z, y = _components(float(k), p)
    return -z * SIGMA_Z - y * SIGMA_Y


def phs_image(matrix: np.ndarray) -> np.ndarray:
    """Apply particle-hole conjugation sigma^x conj(M) sigma^x."""
    return SIGMA_X @ np.conj(matrix) @ SIGMA_X


def mode_static_data(k: float, p: XYParams) -> ModeStaticData:
    """Bundle angle and energy of a single mode."""
    epsilon = quasiparticle_energy(k, p)
    if epsilon == 0.0:
        logger.warning(f"Mode k={k:.12g} is gapless for h={p.h}, gamma={p.gamma}")
    return ModeStaticData(k=float(k), theta=bogoliubov_angle(k, p), epsilon=epsilon)


__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",
    "build_grid",
    "bogoliubov_angle",
    "quasiparticle_energy",
    "bloch_matrix",
    "phs_image",
    "mode_static_data",
]
