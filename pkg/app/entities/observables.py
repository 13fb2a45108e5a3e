"""Phase, winding and entropy entities."""

import numpy as np
from pydantic import BaseModel, ConfigDict


class PhaseSeries(BaseModel):
    """Total, dynamical and geometric phase of one mode over time."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: float
    times: np.ndarray
    phi_total: np.ndarray
    phi_dyn: np.ndarray
    phi_geo: np.ndarray
    # Samples where |G_k| fell below the amplitude floor; phase was interpolated.
    flagged: np.ndarray


class WindingSeries(BaseModel):
    """Integer winding of the geometric phase across momentum, per time."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    nu: np.ndarray
    residue: np.ndarray

    def jump_times(self) -> np.ndarray:
        """Times right after each change of nu."""
        changes = np.nonzero(np.diff(self.nu))[0]
        return self.times[changes + 1]


class EntropyProfile(BaseModel):
    """Double-mode von Neumann entropy per momentum, in nats."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    momenta: np.ndarray
    entropy: np.ndarray

    @property
    def argmax(self) -> float:
        return float(self.momenta[int(np.argmax(self.entropy))])


__all__ = ["PhaseSeries", "WindingSeries", "EntropyProfile"]
