"""Hamiltonian, squeezing and quench parameter entities."""

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.config import settings

TWO_PI = 2.0 * math.pi
UNIVERSAL_R = math.pi / 4.0


def canonical_angle(phi: float) -> float:
    """Reduce an angle to the half-open interval (-pi, pi]."""
    reduced = phi - TWO_PI * math.ceil((phi - math.pi) / TWO_PI)
    if reduced <= -math.pi:
        reduced += TWO_PI
    return reduced


class XYParams(BaseModel):
    """Transverse field h and anisotropy gamma of the XY chain."""

    model_config = ConfigDict(frozen=True)

    h: float
    gamma: float

    @field_validator("h", "gamma")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Reject NaN and infinite couplings."""
        if not math.isfinite(v):
            raise ValueError("Hamiltonian parameters must be finite")
        return float(v)


class SqueezeSpec(BaseModel):
    """
    Double-mode squeezing parameter xi = r * exp(i * phi).

    Negative strengths are folded into the direction, (r, phi) -> (-r, phi + pi),
    and phi is kept in (-pi, pi].
    """

    model_config = ConfigDict(frozen=True)

    r: float = 0.0
    phi: float = 0.0

    @model_validator(mode="before")
    @classmethod
    def canonicalize(cls, data: Any) -> Any:
        """Fold negative r and reduce phi before field validation."""
        if not isinstance(data, dict):
            return data
        r = float(data.get("r", 0.0))
        phi = float(data.get("phi", 0.0))
        if not (math.isfinite(r) and math.isfinite(phi)):
            raise ValueError("Squeezing parameters must be finite")
        if r < 0.0:
            r, phi = -r, phi + math.pi
        return {**data, "r": r, "phi": canonical_angle(phi)}

    @property
    def xi(self) -> complex:
        """Complex squeezing parameter."""
        return self.r * complex(math.cos(self.phi), math.sin(self.phi))

    @property
    def preserves_phs(self) -> bool:
        """Whether the squeeze commutes with particle-hole conjugation (real xi)."""
        return abs(math.sin(self.phi) * math.sin(self.r)) < settings.PHS_TOL

    @property
    def is_universal_point(self) -> bool:
        """Whether (r, phi) sits at the maximally entangling point pi/4, 0."""
        return abs(self.r - UNIVERSAL_R) < 1e-15 and abs(self.phi) < 1e-15

    def conjugate(self) -> "SqueezeSpec":
        """Return the squeeze with xi replaced by its complex conjugate."""
        return SqueezeSpec(r=self.r, phi=-self.phi)


class QuenchSpec(BaseModel):
    """Sudden change from pre-quench to post-quench parameters."""

    model_config = ConfigDict(frozen=True)

    pre: XYParams
    post: XYParams

    @classmethod
    def from_values(cls, h0: float, gamma0: float, h1: float, gamma1: float) -> "QuenchSpec":
        """Build a quench from four scalars."""
        return cls(pre=XYParams(h=h0, gamma=gamma0), post=XYParams(h=h1, gamma=gamma1))

    @property
    def is_null(self) -> bool:
        """Whether pre and post Hamiltonians coincide."""
        return self.pre == self.post


__all__ = [
    "TWO_PI",
    "UNIVERSAL_R",
    "canonical_angle",
    "XYParams",
    "SqueezeSpec",
    "QuenchSpec",
]
