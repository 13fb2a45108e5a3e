"""Pydantic schemas for command-line runs."""

from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.config import settings
from app.entities.oracle import SqueezeKernel
from app.entities.params import QuenchSpec, SqueezeSpec


class Command(str, Enum):
    """Subcommands of the command-line front end."""

    RATE = "rate"
    ZEROS = "zeros"
    SCAN = "scan"
    PHASE = "phase"
    ENTROPY = "entropy"
    PAIRING = "pairing"
    VALIDATE = "validate"


class OutputFormat(str, Enum):
    """Serialization of the result."""

    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """Fully resolved settings of one invocation."""

    model_config = ConfigDict(frozen=True)

    command: Command
    quench: QuenchSpec
    squeeze: SqueezeSpec = Field(default_factory=SqueezeSpec)
    n_sites: int = Field(default=settings.DEFAULT_SITES, description="Chain length N")
    t_max: float = Field(..., description="End of the time window")
    n_steps: int = Field(default=2000, description="Number of time samples, t = 0 included")
    output: Optional[str] = Field(None, description="Output path, stdout when omitted")
    fmt: OutputFormat = OutputFormat.CSV

    # Subcommand-specific grids
    r_steps: int = Field(default=settings.SCAN_R_STEPS, ge=1)
    phi_steps: int = Field(default=settings.SCAN_PHI_STEPS, ge=1)
    r_values: List[float] = Field(default_factory=list)
    n_max: int = Field(default=2, ge=0)
    k_samples: int = Field(default=200, ge=1)
    d_max: int = Field(default=10, ge=1)
    k: Optional[float] = None

    # Numerics
    prominence: float = Field(default=settings.PEAK_PROMINENCE, gt=0.0)
    flip_sign: bool = False
    winding: bool = True
    kernel: SqueezeKernel = SqueezeKernel(settings.ED_KERNEL)
    workers: int = Field(default=settings.SCAN_WORKERS, ge=1)
    samples: int = Field(default=settings.VALIDATION_SAMPLES, ge=1)
    seed: int = settings.VALIDATION_SEED

    @field_validator("t_max")
    @classmethod
    def validate_t_max(cls, v: float) -> float:
        """Validate the time window."""
        if not v > 0.0:
            raise ValueError("t_max must be positive")
        return v

    @field_validator("n_steps")
    @classmethod
    def validate_n_steps(cls, v: int) -> int:
        """Validate the number of time samples."""
        if v < 2:
            raise ValueError("n_steps must be at least 2")
        return v

    @field_validator("n_sites")
    @classmethod
    def validate_n_sites(cls, v: int) -> int:
        """Validate the chain length."""
        if v < 2 or v % 2:
            raise ValueError("n_sites must be an even integer >= 2")
        return v

    @property
    def times(self) -> np.ndarray:
        """Uniform time grid from 0 to t_max."""
        return np.linspace(0.0, self.t_max, self.n_steps)

    @property
    def r_grid(self) -> np.ndarray:
        return np.linspace(0.0, np.pi / 2.0, self.r_steps)

    @property
    def phi_grid(self) -> np.ndarray:
        return np.linspace(-np.pi, np.pi, self.phi_steps)

    @property
    def momentum_samples(self) -> np.ndarray:
        """Interior momenta for Fisher-zero lines."""
        return np.linspace(0.0, np.pi, self.k_samples + 2)[1:-1]

    def summary(self) -> Dict[str, Any]:
        """JSON-ready echo of the configuration."""
        return self.model_dump(mode="json")


__all__ = ["Command", "OutputFormat", "RunConfig"]
