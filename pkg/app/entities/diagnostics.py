"""DQPT diagnostic entities: rate series, Fisher zeros, critical sets, delta maps."""

from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class RateSeries(BaseModel):
    """Rate function sampled on a time grid, with detected peak locations."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    values: np.ndarray
    peak_times: List[float] = Field(default_factory=list)
    flip_sign: bool = False

    @model_validator(mode="after")
    def validate_shapes(self) -> "RateSeries":
        if self.times.shape != self.values.shape:
            raise ValueError("times and values must have the same shape")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        return self

    @property
    def time_step(self) -> float:
        """Largest spacing of the time grid."""
        if self.times.size < 2:
            return 0.0
        return float(np.max(np.diff(self.times)))

    def with_peaks(self, peak_times: List[float]) -> "RateSeries":
        return self.model_copy(update={"peak_times": list(peak_times)})


class FisherZeroSample(BaseModel):
    """One momentum sample of a Fisher-zero line; tau/t are None when unbounded."""

    model_config = ConfigDict(frozen=True)

    k: float
    tau: Optional[float] = None
    t: Optional[float] = None
    unbounded: bool = False


class FisherZeroLine(BaseModel):
    """Branch n of the complex-time zeros z_n(k) = tau + i t."""

    model_config = ConfigDict(frozen=True)

    n: int
    samples: List[FisherZeroSample]

    @property
    def bounded(self) -> List[FisherZeroSample]:
        return [sample for sample in self.samples if not sample.unbounded]

    @property
    def unbounded_count(self) -> int:
        return sum(1 for sample in self.samples if sample.unbounded)


class CriticalTime(BaseModel):
    """Real-time crossing t_c of branch n at critical momentum k."""

    model_config = ConfigDict(frozen=True)

    k: float
    n: int
    t: float


class CriticalInterval(BaseModel):
    """Band of crossings of branch n when every mode is critical."""

    model_config = ConfigDict(frozen=True)

    n: int
    t_min: float
    t_max: float


class CriticalSet(BaseModel):
    """Critical momenta of a squeezed quench and their crossing times."""

    model_config = ConfigDict(frozen=True)

    momenta: List[float] = Field(default_factory=list)
    times: List[CriticalTime] = Field(default_factory=list)
    intervals: List[CriticalInterval] = Field(default_factory=list)
    all_modes_critical: bool = False

    @property
    def has_dqpt(self) -> bool:
        return self.all_modes_critical or bool(self.momenta)

    def sorted_times(self) -> List[float]:
        return sorted(entry.t for entry in self.times)


class DeltaMap(BaseModel):
    """min_k |Delta_k| over an (r, phi) grid; rows follow r, columns follow phi."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r_values: np.ndarray
    phi_values: np.ndarray
    delta: np.ndarray

    @model_validator(mode="after")
    def validate_shape(self) -> "DeltaMap":
        expected = (self.r_values.size, self.phi_values.size)
        if self.delta.shape != expected:
            raise ValueError(f"delta has shape {self.delta.shape}, expected {expected}")
        return self

    def zero_mask(self, threshold: float = 1e-6) -> np.ndarray:
        """Cells where a DQPT is present within ``threshold``."""
        return self.delta < threshold


__all__ = [
    "RateSeries",
    "FisherZeroSample",
    "FisherZeroLine",
    "CriticalTime",
    "CriticalInterval",
    "CriticalSet",
    "DeltaMap",
]
