"""Oracle frames and validation report entities."""

from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class SqueezeKernel(str, Enum):
    """Real-space pairing kernel used to build the spin-frame squeeze."""

    DISCRETE = "discrete"
    INTEGRAL = "integral"


class CheckStatus(str, Enum):
    """Outcome of one validation check."""

    PASSED = "passed"
    FAILED = "failed"
    EXCLUDED = "excluded"


class ModeFockFrame(BaseModel):
    """Even-parity 2x2 Hamiltonians of one (k, -k) pair before and after the quench."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: float
    h_even_pre: np.ndarray
    h_even_post: np.ndarray


class SpinChainFrame(BaseModel):
    """Dense spin-chain operators of an N-site periodic ring."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_sites: int
    h_pre: np.ndarray
    h_post: np.ndarray
    squeeze_generator: np.ndarray
    kernel: SqueezeKernel = SqueezeKernel.DISCRETE

    @property
    def dimension(self) -> int:
        return 2 ** self.n_sites


class ParityReport(BaseModel):
    """Fermion-parity diagnostics of a spin-chain frame."""

    model_config = ConfigDict(frozen=True)

    n_sites: int
    ground_parity: float
    even_sector_energy: float
    odd_sector_energy: float
    generator_commutator_norm: float

    @property
    def is_even(self) -> bool:
        return self.ground_parity > 0.0


class CheckResult(BaseModel):
    """One entry of the validation report."""

    name: str
    max_abs_error: float
    tolerance: float
    passed: bool = Field(serialization_alias="pass")
    status: CheckStatus = CheckStatus.PASSED
    required: bool = True
    samples: int = 0
    note: Optional[str] = None


class ValidationReport(BaseModel):
    """Oracle comparison report written by ``validate``."""

    config: Dict[str, Any]
    per_check: List[CheckResult] = Field(default_factory=list)
    kernel_comparison: Optional[Dict[str, Any]] = None

    @property
    def overall_pass(self) -> bool:
        return all(check.passed for check in self.per_check if check.required)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready representation with ``pass`` keys."""
        return {
            "config": self.config,
            "per_check": [check.model_dump(by_alias=True, mode="json") for check in self.per_check],
            "kernel_comparison": self.kernel_comparison,
            "overall_pass": self.overall_pass,
        }


__all__ = [
    "SqueezeKernel",
    "CheckStatus",
    "ModeFockFrame",
    "SpinChainFrame",
    "ParityReport",
    "CheckResult",
    "ValidationReport",
]
