"""
Post-quench overlap structure of a squeezed initial state.

With alpha_k the mismatch between post- and pre-quench Bogoliubov angles the
squeezed pre-quench vacuum decomposes on the post-quench pair sector as

    A_k = cos r cos alpha + i e^{i phi} sin r sin alpha
    B_k = -i cos r sin alpha - e^{i phi} sin r cos alpha

and each mode contributes G_k(t) = |A|^2 e^{i eps t} + |B|^2 e^{-i eps t}
to the Loschmidt amplitude.
"""

from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from app.core.model import bogoliubov_angle, quasiparticle_energy
from app.entities.modes import ModeQuenchData, MomentumGrid, QuenchTable
from app.entities.params import QuenchSpec, SqueezeSpec
from app.utils.logger import get_logger

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]


def _scalar_or_array(value: np.ndarray):
    if np.ndim(value) == 0:
        return value.item() if isinstance(value, np.ndarray) else value
    return value


def mismatch_angle(k: ArrayLike, q: QuenchSpec) -> ArrayLike:
    """Bogoliubov-angle mismatch alpha_k = theta_post - theta_pre."""
    return _scalar_or_array(
        np.asarray(bogoliubov_angle(k, q.post)) - np.asarray(bogoliubov_angle(k, q.pre))
    )


def overlaps_from_angle(alpha: ArrayLike, s: SqueezeSpec) -> Tuple[ArrayLike, ArrayLike]:
    """Overlap amplitudes (A, B) for a given angle mismatch."""
    phase = np.exp(1j * s.phi)
    cr, sr = np.cos(s.r), np.sin(s.r)
    ca, sa = np.cos(alpha), np.sin(alpha)
    a = cr * ca + 1j * phase * sr * sa
    b = -1j * cr * sa - phase * sr * ca
    return _scalar_or_array(a), _scalar_or_array(b)


def delta_from_angle(alpha: ArrayLike, s: SqueezeSpec) -> ArrayLike:
    """Critical-condition scalar cos 2r cos 2alpha - sin 2r sin 2alpha sin phi."""
    two_alpha = 2.0 * np.asarray(alpha)
    value = np.cos(2.0 * s.r) * np.cos(two_alpha) - np.sin(2.0 * s.r) * np.sin(two_alpha) * np.sin(
        s.phi
    )
    return _scalar_or_array(value)


def overlap_amplitudes(k: ArrayLike, q: QuenchSpec, s: SqueezeSpec) -> Tuple[ArrayLike, ArrayLike]:
    """
    Overlap amplitudes of the squeezed state with the post-quench pair sector.

    Args:
        k: Momentum (scalar or array) in (0, pi)
        q: Quench
        s: Squeeze

    Returns:
        Tuple (A_k, B_k) with |A|^2 + |B|^2 = 1
    """
    return overlaps_from_angle(mismatch_angle(k, q), s)


def delta_k(k: ArrayLike, q: QuenchSpec, s: SqueezeSpec) -> ArrayLike:
    """Delta_k = |A_k|^2 - |B_k|^2; a zero marks a critical momentum."""
    return delta_from_angle(mismatch_angle(k, q), s)


def mode_loschmidt(k: ArrayLike, q: QuenchSpec, s: SqueezeSpec, t: ArrayLike) -> ArrayLike:
    """
    Per-mode Loschmidt amplitude G_k(t).

    ``k`` and ``t`` broadcast against each other with numpy rules.
    """
    a, b = overlap_amplitudes(k, q, s)
    eps = quasiparticle_energy(k, q.post)
    return _scalar_or_array(
        loschmidt_from_weights(np.abs(a) ** 2, np.abs(b) ** 2, np.asarray(eps), np.asarray(t))
    )


def loschmidt_from_weights(
    weight_a: np.ndarray, weight_b: np.ndarray, eps: np.ndarray, t: np.ndarray
) -> np.ndarray:
    """|A|^2 e^{i eps t} + |B|^2 e^{-i eps t} with numpy broadcasting."""
    phase = np.exp(1j * eps * t)
    return weight_a * phase + weight_b * np.conj(phase)


def mode_quench_data(k: float, q: QuenchSpec, s: SqueezeSpec) -> ModeQuenchData:
    """Scalar ModeQuenchData record for one momentum."""
    alpha = float(mismatch_angle(k, q))
    a, b = overlaps_from_angle(alpha, s)
    return ModeQuenchData(
        k=float(k),
        alpha=alpha,
        eps_post=float(quasiparticle_energy(k, q.post)),
        A=complex(a),
        B=complex(b),
        delta=float(delta_from_angle(alpha, s)),
    )


def build_quench_table(q: QuenchSpec, s: SqueezeSpec, grid: MomentumGrid) -> QuenchTable:
    """
    Precompute the overlap structure of every grid mode.

    Tables are cached per (q, s, grid) and their arrays are read-only.
    """
    return _cached_table(q, s, grid)


@lru_cache(maxsize=64)
def _cached_table(q: QuenchSpec, s: SqueezeSpec, grid: MomentumGrid) -> QuenchTable:
    k = grid.momenta
    alpha = np.asarray(mismatch_angle(k, q))
    a, b = overlaps_from_angle(alpha, s)
    arrays = {
        "momenta": k,
        "alpha": alpha,
        "eps_post": np.asarray(quasiparticle_energy(k, q.post)),
        "A": np.asarray(a),
        "B": np.asarray(b),
        "weight_a": np.abs(a) ** 2,
        "weight_b": np.abs(b) ** 2,
        "delta": np.asarray(delta_from_angle(alpha, s)),
    }
    for array in arrays.values():
        array.setflags(write=False)
    logger.debug(f"Built quench table for {grid.size} modes (r={s.r:.6g}, phi={s.phi:.6g})")
    return QuenchTable(**arrays)


def loschmidt_matrix(table: QuenchTable, times: np.ndarray) -> np.ndarray:
    """Mode amplitudes G_k(t) as an array of shape (len(times), n_modes)."""
    t = np.asarray(times, dtype=float)[:, None]
    return loschmidt_from_weights(table.weight_a, table.weight_b, table.eps_post, t)


__all__ = [
    "mismatch_angle",
    "overlaps_from_angle",
    "delta_from_angle",
    "overlap_amplitudes",
    "delta_k",
    "mode_loschmidt",
    "loschmidt_from_weights",
    "mode_quench_data",
    "build_quench_table",
    "loschmidt_matrix",
]
