"""Per-momentum entities: grid, static mode data, pair states, quench data."""

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class MomentumGrid(BaseModel):
    """
    Positive momenta of the antiperiodic (even fermion parity) sector.

    Only ``n_sites`` is stored; ``momenta`` is derived, which keeps the grid
    hashable so quench tables can be cached per grid.
    """

    model_config = ConfigDict(frozen=True)

    n_sites: int

    @field_validator("n_sites")
    @classmethod
    def validate_even(cls, v: int) -> int:
        """Grid needs an even, positive chain length."""
        if v < 2 or v % 2:
            raise ValueError(f"n_sites must be even and >= 2, got {v}")
        return v

    @property
    def size(self) -> int:
        """Number of positive momenta, N/2."""
        return self.n_sites // 2

    @property
    def momenta(self) -> np.ndarray:
        """Momenta (2m - 1) * pi / N for m = 1..N/2."""
        m = np.arange(1, self.size + 1, dtype=float)
        return (2.0 * m - 1.0) * math.pi / self.n_sites

    @property
    def spacing(self) -> float:
        """Distance between adjacent momenta."""
        return 2.0 * math.pi / self.n_sites


class ModeStaticData(BaseModel):
    """Bogoliubov angle and quasiparticle energy of one mode."""

    model_config = ConfigDict(frozen=True)

    k: float
    theta: float
    epsilon: float

    @property
    def is_gapless(self) -> bool:
        return self.epsilon == 0.0


class ModePairState(BaseModel):
    """State of one (k, -k) pair in the basis {|0 0>, |1 1>}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a0: complex
    a1: complex

    @model_validator(mode="after")
    def validate_norm(self) -> "ModePairState":
        norm = abs(self.a0) ** 2 + abs(self.a1) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"pair state is not normalised (norm {norm!r})")
        return self

    def as_vector(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=complex)


class ModeQuenchData(BaseModel):
    """Overlap structure of a single mode after a squeezed quench."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: float
    alpha: float
    eps_post: float
    A: complex
    B: complex
    delta: float

    @property
    def weights(self) -> Tuple[float, float]:
        """Occupation weights (|A|^2, |B|^2)."""
        return abs(self.A) ** 2, abs(self.B) ** 2


class QuenchTable(BaseModel):
    """
    Vectorised ModeQuenchData for every momentum of a grid.

    Arrays are read-only; tables are built once per (quench, squeeze, grid)
    and shared by every time-dependent computation.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    momenta: np.ndarray
    alpha: np.ndarray
    eps_post: np.ndarray
    A: np.ndarray
    B: np.ndarray
    weight_a: np.ndarray
    weight_b: np.ndarray
    delta: np.ndarray

    @property
    def size(self) -> int:
        return int(self.momenta.shape[0])

    def mode(self, index: int) -> ModeQuenchData:
        """Extract the scalar record of one grid mode."""
        return ModeQuenchData(
            k=float(self.momenta[index]),
            alpha=float(self.alpha[index]),
            eps_post=float(self.eps_post[index]),
            A=complex(self.A[index]),
            B=complex(self.B[index]),
            delta=float(self.delta[index]),
        )


__all__ = [
    "MomentumGrid",
    "ModeStaticData",
    "ModePairState",
    "ModeQuenchData",
    "QuenchTable",
]
