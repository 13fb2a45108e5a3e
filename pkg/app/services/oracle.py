"""
Brute-force oracles for the momentum-space formulas.

Two independent routes to the Loschmidt amplitude:

* a per-mode propagator on the even-parity pair sector {|0 0>, c_k^+ c_-k^+ |0 0>},
  using a numerical eigendecomposition instead of the closed-form overlaps;
* exact diagonalization of the periodic N-site spin chain, with the squeeze
  built from Jordan-Wigner string operators.

Jordan-Wigner conventions: basis (up, down) per site with site 0 the leftmost
tensor factor, c_n^+ = prod_{m<n}(-sigma^z_m) sigma^+_n, and
c_k = N^{-1/2} sum_n e^{ikn} c_n. In the even fermion-parity sector the
boundary bond is antiperiodic, which reproduces the momentum grid of
``build_grid``.
"""

import math
from functools import reduce
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.linalg import eigh, expm

from app.api.exceptions import InvalidArgumentException, SectorMismatchException
from app.config import settings
from app.core.dqpt import detect_peaks, validate_times
from app.core.model import SIGMA_X, SIGMA_Y, SIGMA_Z, bogoliubov_angle
from app.core.squeeze import pairing_amplitude
from app.entities.diagnostics import RateSeries
from app.entities.modes import MomentumGrid
from app.entities.oracle import ModeFockFrame, ParityReport, SpinChainFrame, SqueezeKernel
from app.entities.params import QuenchSpec, SqueezeSpec, XYParams
from app.utils.logger import get_logger

logger = get_logger(__name__)

SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)


# ============================================================================
# Per-mode Fock-space oracle
# ============================================================================

def even_parity_block(k: float, p: XYParams) -> np.ndarray:
    """Pair-sector Hamiltonian [[h + cos k, -i g sin k], [i g sin k, -(h + cos k)]]."""
    a = p.h + math.cos(k)
    b = p.gamma * math.sin(k)
    return np.array([[a, -1j * b], [1j * b, -a]], dtype=complex)


def build_mode_frame(k: float, q: QuenchSpec) -> ModeFockFrame:
    """Pre- and post-quench pair-sector Hamiltonians of one momentum."""
    return ModeFockFrame(
        k=float(k),
        h_even_pre=even_parity_block(k, q.pre),
        h_even_post=even_parity_block(k, q.post),
    )


def _pair_vacuum_and_partner(h_even: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    _, vectors = eigh(h_even)
    ground = vectors[:, 0]
    # Fix the gauge: second component real and non-negative, else first purely imaginary.
    if abs(ground[1]) > 1e-14:
        ground = ground * (np.conj(ground[1]) / abs(ground[1]))
    else:
        ground = ground * (1j * np.conj(ground[0]) / abs(ground[0]))
    partner = np.array([np.conj(ground[1]), -np.conj(ground[0])])
    return ground, partner


def fock_mode_oracle(k: float, q: QuenchSpec, s: SqueezeSpec, t: float) -> complex:
    """
    Loschmidt amplitude of one mode pair by direct propagation.

    The squeezed state cos r |0> - e^{i phi} sin r |11> is built on the
    numerically obtained pre-quench quasiparticle vacuum and evolved with the
    eigendecomposition of the post-quench pair Hamiltonian.

    Args:
        k: Momentum in (0, pi)
        q: Quench
        s: Squeeze
        t: Time

    Returns:
        Complex amplitude <psi| exp(-i H_post t) |psi>
    """
    frame = build_mode_frame(k, q)
    vacuum, pair = _pair_vacuum_and_partner(frame.h_even_pre)
    phase = complex(math.cos(s.phi), math.sin(s.phi))
    psi = math.cos(s.r) * vacuum - phase * math.sin(s.r) * pair

    energies, vectors = eigh(frame.h_even_post)
    amplitudes = vectors.conj().T @ psi
    return complex(np.sum(np.abs(amplitudes) ** 2 * np.exp(-1j * energies * t)))


# ============================================================================
# Spin-chain exact diagonalization
# ============================================================================

def validate_chain_length(n_sites: int) -> int:
    if (
        isinstance(n_sites, bool)
        or int(n_sites) != n_sites
        or n_sites % 2
        or not settings.ED_MIN_SITES <= n_sites <= settings.ED_MAX_SITES
    ):
        raise InvalidArgumentException(
            f"exact diagonalization needs an even chain with "
            f"{settings.ED_MIN_SITES} <= N <= {settings.ED_MAX_SITES}, got {n_sites}",
            field="n_sites",
        )
    return int(n_sites)


def site_operator(
    op: np.ndarray, site: int, n_sites: int, string: bool = False
) -> sparse.csr_matrix:
    """
    Embed a single-site operator into the 2^N space.

    With ``string`` the Jordan-Wigner factor prod_{m<site}(-sigma^z_m) is included.
    """
    left = -SIGMA_Z if string else np.eye(2, dtype=complex)
    factors = [left] * site + [op] + [np.eye(2, dtype=complex)] * (n_sites - site - 1)
    return reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors)


def jordan_wigner_annihilators(n_sites: int) -> List[sparse.csr_matrix]:
    """Fermion annihilators c_n = prod_{m<n}(-sigma^z_m) sigma^-_n."""
    return [site_operator(SIGMA_MINUS, n, n_sites, string=True) for n in range(n_sites)]


def spin_hamiltonian(n_sites: int, p: XYParams) -> sparse.csr_matrix:
    """
    Periodic XY chain in a transverse field.

    H = -1/2 sum_n [(1 + g)/2 X_n X_{n+1} + (1 - g)/2 Y_n Y_{n+1} + h Z_n]
    """
    x = [site_operator(SIGMA_X, n, n_sites) for n in range(n_sites)]
    y = [site_operator(SIGMA_Y, n, n_sites) for n in range(n_sites)]
    z = [site_operator(SIGMA_Z, n, n_sites) for n in range(n_sites)]
    jx, jy = (1.0 + p.gamma) / 2.0, (1.0 - p.gamma) / 2.0
    terms = [
        jx * (x[n] @ x[(n + 1) % n_sites]) + jy * (y[n] @ y[(n + 1) % n_sites]) + p.h * z[n]
        for n in range(n_sites)
    ]
    return (-0.5 * reduce(lambda a, b: a + b, terms)).tocsr()


def parity_diagonal(n_sites: int) -> np.ndarray:
    """Diagonal of prod_n sigma^z_n in the computational basis."""
    occupied_down = np.array([bin(b).count("1") for b in range(2 ** n_sites)])
    return np.where(occupied_down % 2 == 0, 1.0, -1.0)


def pairing_kernel(q: QuenchSpec, n_sites: int, kernel: SqueezeKernel) -> np.ndarray:
    """
    Real-space Bogoliubov kernel K_d for d = 0..N-1 (K_0 = 0).

    ``discrete`` sums over the finite antiperiodic grid,
    K_d = (2/N) sum_{k>0} theta_k sin(k d); ``integral`` uses the
    thermodynamic pairing amplitude, K_d = 2 J_{min(d, N-d)}.
    """
    kernel_values = np.zeros(n_sites)
    if kernel == SqueezeKernel.DISCRETE:
        k = MomentumGrid(n_sites=n_sites).momenta
        theta = np.asarray(bogoliubov_angle(k, q.pre))
        for d in range(1, n_sites):
            kernel_values[d] = 2.0 / n_sites * np.sum(theta * np.sin(k * d))
    else:
        for d in range(1, n_sites):
            kernel_values[d] = 2.0 * pairing_amplitude(min(d, n_sites - d), q.pre)
    return kernel_values


def bogoliubov_generator(
    annihilators: Sequence[sparse.csr_matrix], kernel_values: np.ndarray
) -> sparse.csr_matrix:
    """
    Generator -sum_{x<y} K_{y-x} (c_x^+ c_y^+ - h.c.) of the real-space Bogoliubov rotation.

    c_x^+ c_y^+ is the string operator sigma^+_x prod_{x<l<y}(-sigma^z_l) sigma^+_y.
    """
    n_sites = len(annihilators)
    creators = [c.conj().T.tocsr() for c in annihilators]
    generator = sparse.csr_matrix(annihilators[0].shape, dtype=complex)
    for x in range(n_sites):
        for y in range(x + 1, n_sites):
            pair = creators[x] @ creators[y]
            generator = generator - float(kernel_values[y - x]) * (pair - pair.conj().T)
    return generator.tocsr()


def bare_squeeze_generator(
    annihilators: Sequence[sparse.csr_matrix], s: SqueezeSpec
) -> sparse.csr_matrix:
    """sum_{k>0} (conj(xi) c_k^+ c_-k^+ - xi c_-k c_k) on the antiperiodic grid."""
    n_sites = len(annihilators)
    sites = np.arange(n_sites)
    xi = s.xi
    generator = sparse.csr_matrix(annihilators[0].shape, dtype=complex)
    for k in MomentumGrid(n_sites=n_sites).momenta:
        c_k = reduce(
            lambda a, b: a + b,
            (complex(np.exp(1j * k * n)) * annihilators[n] for n in sites),
        ) / math.sqrt(n_sites)
        c_minus_k = reduce(
            lambda a, b: a + b,
            (complex(np.exp(-1j * k * n)) * annihilators[n] for n in sites),
        ) / math.sqrt(n_sites)
        create_pair = c_k.conj().T @ c_minus_k.conj().T
        annihilate_pair = c_minus_k @ c_k
        generator = generator + xi.conjugate() * create_pair - xi * annihilate_pair
    return generator.tocsr()


def _spin_operators(
    q: QuenchSpec, s: SqueezeSpec, n_sites: int, kernel: SqueezeKernel
) -> Tuple[SpinChainFrame, np.ndarray]:
    annihilators = jordan_wigner_annihilators(n_sites)
    kernel_values = pairing_kernel(q, n_sites, kernel)
    rotation = expm(bogoliubov_generator(annihilators, kernel_values).toarray())
    bare = bare_squeeze_generator(annihilators, s).toarray()
    frame = SpinChainFrame(
        n_sites=n_sites,
        h_pre=spin_hamiltonian(n_sites, q.pre).toarray(),
        h_post=spin_hamiltonian(n_sites, q.post).toarray(),
        squeeze_generator=rotation @ bare @ rotation.conj().T,
        kernel=kernel,
    )
    return frame, rotation


def build_spin_frame(
    q: QuenchSpec,
    s: SqueezeSpec,
    n_sites: int,
    kernel: Optional[SqueezeKernel] = None,
) -> SpinChainFrame:
    """
    Dense Hamiltonians and squeeze generator of an N-site ring.

    The generator is the pair squeeze conjugated by the real-space Bogoliubov
    rotation of the pre-quench chain, so that it creates quasiparticle pairs
    of H_pre rather than bare fermion pairs.

    Raises:
        InvalidArgumentException: If N is odd or outside the ED size window
    """
    n_sites = validate_chain_length(n_sites)
    kernel = SqueezeKernel(kernel or settings.ED_KERNEL)
    logger.debug(f"Building {n_sites}-site spin frame with {kernel.value} kernel")
    return _spin_operators(q, s, n_sites, kernel)[0]


def _sector_ground_state(hamiltonian: np.ndarray, parity: np.ndarray, sign: float):
    indices = np.nonzero(parity == sign)[0]
    energies, vectors = eigh(hamiltonian[np.ix_(indices, indices)])
    state = np.zeros(hamiltonian.shape[0], dtype=complex)
    state[indices] = vectors[:, 0]
    return float(energies[0]), state


def parity_sector_check(frame: SpinChainFrame) -> ParityReport:
    """
    Verify the pre-quench ground state is in the even fermion-parity sector.

    Also measures how far the squeeze generator is from commuting with the
    total parity prod_n sigma^z_n.

    Raises:
        SectorMismatchException: If the odd sector holds the ground state
    """
    parity = parity_diagonal(frame.n_sites)
    even_energy, _ = _sector_ground_state(frame.h_pre, parity, 1.0)
    odd_energy, _ = _sector_ground_state(frame.h_pre, parity, -1.0)
    ground_parity = 1.0 if even_energy <= odd_energy else -1.0
    commutator = frame.squeeze_generator * (parity[None, :] - parity[:, None])
    report = ParityReport(
        n_sites=frame.n_sites,
        ground_parity=ground_parity,
        even_sector_energy=even_energy,
        odd_sector_energy=odd_energy,
        generator_commutator_norm=float(np.linalg.norm(commutator)),
    )
    if not report.is_even:
        raise SectorMismatchException(frame.n_sites, ground_parity)
    return report


def squeezed_ground_state(frame: SpinChainFrame) -> np.ndarray:
    """exp(generator) applied to the even-sector ground state of H_pre."""
    parity = parity_diagonal(frame.n_sites)
    _, ground = _sector_ground_state(frame.h_pre, parity, 1.0)
    return expm(frame.squeeze_generator) @ ground


def spin_ed_rate(
    q: QuenchSpec,
    s: SqueezeSpec,
    times: Sequence[float],
    n_sites: int,
    kernel: Optional[SqueezeKernel] = None,
) -> RateSeries:
    """
    Per-site rate -(2/N) ln |<psi|exp(-i H_post t)|psi>| from exact diagonalization.

    Args:
        q: Quench
        s: Squeeze
        times: Strictly increasing times
        n_sites: Even chain length within the ED size window
        kernel: Pairing kernel of the real-space Bogoliubov rotation

    Returns:
        RateSeries comparable with the momentum-space rate on the N-site grid

    Raises:
        InvalidArgumentException: On a bad chain length or time grid
        SectorMismatchException: If the ground state has odd parity
    """
    t = validate_times(times)
    frame = build_spin_frame(q, s, n_sites, kernel)
    parity_sector_check(frame)
    psi = squeezed_ground_state(frame)

    energies, vectors = eigh(frame.h_post)
    weights = np.abs(vectors.conj().T @ psi) ** 2
    amplitude = np.exp(-1j * np.outer(t, energies)) @ weights
    values = -(2.0 / frame.n_sites) * np.log(np.maximum(np.abs(amplitude), settings.LOG_FLOOR))

    series = RateSeries(times=t, values=values)
    logger.info(f"ED rate for N={frame.n_sites} on {t.size} times ({frame.kernel.value} kernel)")
    return series.with_peaks(detect_peaks(series, settings.PEAK_PROMINENCE))


def bogoliubov_reference_overlap(
    q: QuenchSpec, n_sites: int, kernel: Optional[SqueezeKernel] = None
) -> float:
    """
    |<all up| U_B^+ |GS>|, equal to 1 when U_B exactly rotates the filled pair
    reference state onto the pre-quench ground state.
    """
    n_sites = validate_chain_length(n_sites)
    kernel = SqueezeKernel(kernel or settings.ED_KERNEL)
    frame, rotation = _spin_operators(q, SqueezeSpec(), n_sites, kernel)
    _, ground = _sector_ground_state(frame.h_pre, parity_diagonal(n_sites), 1.0)
    # all up is the first computational basis state
    return float(abs((rotation.conj().T @ ground)[0]))


__all__ = [
    "validate_chain_length",
    "even_parity_block",
    "build_mode_frame",
    "fock_mode_oracle",
    "site_operator",
    "jordan_wigner_annihilators",
    "spin_hamiltonian",
    "parity_diagonal",
    "pairing_kernel",
    "bogoliubov_generator",
    "bare_squeeze_generator",
    "build_spin_frame",
    "parity_sector_check",
    "squeezed_ground_state",
    "spin_ed_rate",
    "bogoliubov_reference_overlap",
]
