"""
Phase decomposition, dynamical topological order and double-mode entropy.

The per-mode Loschmidt phase splits into a dynamical part Delta_k eps_k t and
a Pancharatnam geometric remainder; the winding of the geometric phase across
momentum gives the dynamical topological order parameter nu(t).
"""

import math
from typing import Sequence

import numpy as np
from scipy.special import entr

from app.api.exceptions import (
    InvalidArgumentException,
    PhaseResolutionException,
    WindingResolutionException,
)
from app.config import settings
from app.core.model import quasiparticle_energy
from app.core.quench import build_quench_table, delta_k, loschmidt_matrix, mode_loschmidt
from app.entities.modes import MomentumGrid
from app.entities.observables import EntropyProfile, PhaseSeries, WindingSeries
from app.entities.params import TWO_PI, QuenchSpec, SqueezeSpec
from app.utils.logger import get_logger

logger = get_logger(__name__)

LN2 = math.log(2.0)
WRAP_SNAP = 1e-12


def _wrap_positive(angle: np.ndarray) -> np.ndarray:
    """Reduce to [0, 2pi); values within WRAP_SNAP below 2pi fold back to 0."""
    wrapped = np.mod(angle, TWO_PI)
    return np.where(TWO_PI - wrapped <= WRAP_SNAP, 0.0, wrapped)


def _principal(angle: np.ndarray) -> np.ndarray:
    """
    Reduce increments to the principal interval (-pi, pi].

    Increments within WRAP_SNAP of -pi count as +pi, so a sign flip of a real
    amplitude is one half turn whatever the sign of its rounding noise.
    """
    reduced = math.pi - np.mod(math.pi - angle, TWO_PI)
    return np.where(reduced <= -math.pi + WRAP_SNAP, math.pi, reduced)


# ============================================================================
# Phases
# ============================================================================

def dynamical_phase(k: float, q: QuenchSpec, s: SqueezeSpec, t):
    """Dynamical phase (|A|^2 - |B|^2) eps_k t = Delta_k eps_k t."""
    value = delta_k(k, q, s) * quasiparticle_energy(k, q.post) * np.asarray(t, dtype=float)
    return float(value) if np.ndim(value) == 0 else value


def _phase_track(k: float, q: QuenchSpec, s: SqueezeSpec, times: Sequence[float]):
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise InvalidArgumentException("times must be a non-empty 1-d sequence", field="times")
    if t[0] != 0.0:
        raise InvalidArgumentException("phase tracking starts at t = 0", field="times")
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise InvalidArgumentException("times must be strictly increasing", field="times")

    eps = float(quasiparticle_energy(k, q.post))
    # Both components of G_k rotate by eps*dt per step; above pi the branch is ambiguous.
    if t.size > 1 and eps > 0.0:
        step = float(np.max(np.diff(t)))
        if eps * step >= math.pi:
            raise PhaseResolutionException(k=k, time_step=step, required_step=math.pi / eps)

    g = np.asarray(mode_loschmidt(k, q, s, t), dtype=complex)
    flagged = np.abs(g) < settings.AMPLITUDE_FLOOR
    valid = ~flagged
    phase = np.zeros_like(t)
    if np.any(valid):
        phase[valid] = np.unwrap(np.angle(g[valid]))
        if np.any(flagged):
            phase[flagged] = np.interp(t[flagged], t[valid], phase[valid])
            logger.warning(
                f"Mode k={k:.6g}: {int(flagged.sum())} samples with |G| below "
                f"{settings.AMPLITUDE_FLOOR:g} interpolated"
            )
    return t, phase, flagged


def total_phase(k: float, q: QuenchSpec, s: SqueezeSpec, times: Sequence[float]) -> np.ndarray:
    """
    Continuous phase of G_k(t) along the time series, starting at 0.

    Args:
        k: Momentum
        q: Quench
        s: Squeeze
        times: Strictly increasing times starting at 0

    Returns:
        Unwrapped phase per time

    Raises:
        PhaseResolutionException: If a time step lets the phase change by pi or more
    """
    return _phase_track(k, q, s, times)[1]


def geometric_phase(k: float, q: QuenchSpec, s: SqueezeSpec, times: Sequence[float]) -> np.ndarray:
    """Pancharatnam phase (phi_total - phi_dyn) reduced to [0, 2pi)."""
    t, phase, _ = _phase_track(k, q, s, times)
    return _wrap_positive(phase - dynamical_phase(k, q, s, t))


def phase_series(k: float, q: QuenchSpec, s: SqueezeSpec, times: Sequence[float]) -> PhaseSeries:
    """Total, dynamical and geometric phase of one mode, with interpolation flags."""
    t, phase, flagged = _phase_track(k, q, s, times)
    dyn = np.asarray(dynamical_phase(k, q, s, t))
    return PhaseSeries(
        k=float(k),
        times=t,
        phi_total=phase,
        phi_dyn=dyn,
        phi_geo=_wrap_positive(phase - dyn),
        flagged=flagged,
    )


# ============================================================================
# Dynamical topological order parameter
# ============================================================================

def _winding_at(q: QuenchSpec, s: SqueezeSpec, times: np.ndarray, grid: MomentumGrid):
    table = build_quench_table(q, s, grid)
    g = loschmidt_matrix(table, times)
    geo = np.angle(g) - table.delta * table.eps_post * times[:, None]
    winding = np.empty(times.size)
    for i in range(times.size):
        path = geo[i, np.abs(g[i]) >= settings.AMPLITUDE_FLOOR]
        if path.size == 0:
            winding[i] = 0.0
            continue
        # Closed loop: the last momentum connects back to the first.
        steps = _principal(np.diff(np.append(path, path[0])))
        winding[i] = np.sum(steps) / TWO_PI
    nu = np.rint(winding)
    return winding, nu, np.abs(winding - nu)


def dtop_winding(q: QuenchSpec, s: SqueezeSpec, t: float, grid: MomentumGrid) -> int:
    """
    Winding nu(t) of the geometric phase across the momentum grid.

    Principal-value increments of phi^G between adjacent momenta are summed
    around the closed Brillouin-zone loop, the last momentum joining the first,
    and divided by 2pi. Modes with |G_k| below the amplitude floor are skipped.
    At the universal point phi^G is 0 or pi on every mode and nu counts the
    momentum arcs with G_k < 0.

    Raises:
        WindingResolutionException: If the sum is further than
            settings.WINDING_RESIDUE_TOL from an integer
    """
    winding, nu, residue = _winding_at(q, s, np.array([float(t)]), grid)
    if residue[0] > settings.WINDING_RESIDUE_TOL:
        raise WindingResolutionException(
            t=float(t), winding=float(winding[0]), residue=float(residue[0]),
            tolerance=settings.WINDING_RESIDUE_TOL,
        )
    return int(nu[0])


def winding_series(
    q: QuenchSpec,
    s: SqueezeSpec,
    times: Sequence[float],
    grid: MomentumGrid,
) -> WindingSeries:
    """nu(t) on a time grid; raises on the first unresolved time."""
    t = np.asarray(times, dtype=float)
    winding, nu, residue = _winding_at(q, s, t, grid)
    bad = np.nonzero(residue > settings.WINDING_RESIDUE_TOL)[0]
    if bad.size:
        i = int(bad[0])
        raise WindingResolutionException(
            t=float(t[i]), winding=float(winding[i]), residue=float(residue[i]),
            tolerance=settings.WINDING_RESIDUE_TOL,
        )
    return WindingSeries(times=t, nu=nu.astype(int), residue=residue)


# ============================================================================
# Double-mode entropy
# ============================================================================

def reduced_density_matrix(k: float, q: QuenchSpec, s: SqueezeSpec) -> np.ndarray:
    """State of mode k after tracing out -k: diag((1 + Delta)/2, (1 - Delta)/2)."""
    delta = float(delta_k(k, q, s))
    return np.diag([(1.0 + delta) / 2.0, (1.0 - delta) / 2.0])


def mode_entropy(delta, tol: float = 1e-12):
    """
    Von Neumann entropy (nats) of a mode pair with imbalance ``delta``.

    Raises:
        InvalidArgumentException: If |delta| exceeds 1 by more than ``tol``
    """
    d = np.asarray(delta, dtype=float)
    if np.any(np.abs(d) > 1.0 + tol):
        raise InvalidArgumentException(f"|delta| must not exceed 1, got {delta}", field="delta")
    d = np.clip(d, -1.0, 1.0)
    value = entr((1.0 + d) / 2.0) + entr((1.0 - d) / 2.0)
    return float(value) if np.ndim(value) == 0 else value


def entropy_profile(q: QuenchSpec, s: SqueezeSpec, grid: MomentumGrid) -> EntropyProfile:
    """Double-mode entropy S_k on every grid momentum."""
    table = build_quench_table(q, s, grid)
    return EntropyProfile(momenta=table.momenta, entropy=np.asarray(mode_entropy(table.delta)))


def entropy_at(k: float, q: QuenchSpec, s: SqueezeSpec) -> float:
    """Entropy of a single (off-grid) momentum."""
    return float(mode_entropy(delta_k(k, q, s)))


__all__ = [
    "LN2",
    "dynamical_phase",
    "total_phase",
    "geometric_phase",
    "phase_series",
    "dtop_winding",
    "winding_series",
    "reduced_density_matrix",
    "mode_entropy",
    "entropy_profile",
    "entropy_at",
]
