"""Services layer: oracles, validation, presets and result writers."""

# Oracles
from app.services.oracle import (
    bogoliubov_reference_overlap,
    build_spin_frame,
    fock_mode_oracle,
    parity_sector_check,
    spin_ed_rate,
)

# Scenarios
from app.services.presets import PRESETS, Preset, get_preset

# Validation
from app.services.validator import ValidationService

__all__ = [
    # Oracles
    "fock_mode_oracle",
    "build_spin_frame",
    "parity_sector_check",
    "spin_ed_rate",
    "bogoliubov_reference_overlap",

    # Scenarios
    "PRESETS",
    "Preset",
    "get_preset",

    # Validation
    "ValidationService",
]
