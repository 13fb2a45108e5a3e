"""Domain entities module."""

from app.entities.diagnostics import (
    CriticalInterval,
    CriticalSet,
    CriticalTime,
    DeltaMap,
    FisherZeroLine,
    FisherZeroSample,
    RateSeries,
)
from app.entities.modes import (
    ModePairState,
    ModeQuenchData,
    ModeStaticData,
    MomentumGrid,
    QuenchTable,
)
from app.entities.observables import EntropyProfile, PhaseSeries, WindingSeries
from app.entities.oracle import (
    CheckResult,
    CheckStatus,
    ModeFockFrame,
    ParityReport,
    SpinChainFrame,
    SqueezeKernel,
    ValidationReport,
)
from app.entities.params import QuenchSpec, SqueezeSpec, XYParams

__all__ = [
    "XYParams",
    "SqueezeSpec",
    "QuenchSpec",
    "MomentumGrid",
    "ModeStaticData",
    "ModePairState",
    "ModeQuenchData",
    "QuenchTable",
    "RateSeries",
    "FisherZeroSample",
    "FisherZeroLine",
    "CriticalTime",
    "CriticalInterval",
    "CriticalSet",
    "DeltaMap",
    "PhaseSeries",
    "WindingSeries",
    "EntropyProfile",
    "SqueezeKernel",
    "CheckStatus",
    "ModeFockFrame",
    "SpinChainFrame",
    "ParityReport",
    "CheckResult",
    "ValidationReport",
]
