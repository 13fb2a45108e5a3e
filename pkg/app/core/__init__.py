"""Core physics of the squeezed XY-chain quench."""

from app.core.dqpt import (
    critical_momenta,
    critical_times,
    loschmidt_log_amplitude,
    delta_criterion,
    delta_scan,
    detect_peaks,
    dominant_peaks,
    fisher_zero_family,
    fisher_zero_line,
    post_quench_energy_range,
    rate_function,
)
from app.core.model import (
    bloch_matrix,
    bogoliubov_angle,
    build_grid,
    mode_static_data,
    quasiparticle_energy,
)
from app.core.observables import (
    dtop_winding,
    dynamical_phase,
    entropy_profile,
    geometric_phase,
    mode_entropy,
    phase_series,
    reduced_density_matrix,
    total_phase,
    winding_series,
)
from app.core.quench import (
    build_quench_table,
    delta_k,
    mode_loschmidt,
    mode_quench_data,
    overlap_amplitudes,
)
from app.core.squeeze import (
    pairing_amplitude,
    pairing_table,
    phs_conjugate_matrix,
    squeeze_generator,
    squeeze_matrix,
    squeeze_vacuum,
)

__all__ = [
    "build_grid",
    "bogoliubov_angle",
    "quasiparticle_energy",
    "bloch_matrix",
    "mode_static_data",
    "squeeze_generator",
    "squeeze_matrix",
    "squeeze_vacuum",
    "phs_conjugate_matrix",
    "pairing_amplitude",
    "pairing_table",
    "overlap_amplitudes",
    "delta_k",
    "mode_loschmidt",
    "mode_quench_data",
    "build_quench_table",
    "loschmidt_log_amplitude",
    "rate_function",
    "detect_peaks",
    "dominant_peaks",
    "fisher_zero_line",
    "fisher_zero_family",
    "critical_momenta",
    "critical_times",
    "post_quench_energy_range",
    "delta_criterion",
    "delta_scan",
    "dynamical_phase",
    "total_phase",
    "geometric_phase",
    "phase_series",
    "dtop_winding",
    "winding_series",
    "reduced_density_matrix",
    "mode_entropy",
    "entropy_profile",
]
