"""Named quench scenarios reproducing the reference figures."""

import math
from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field

from app.api.exceptions import InvalidArgumentException
from app.entities.params import QuenchSpec, SqueezeSpec


class Preset(BaseModel):
    """One named scenario: quench, squeeze and the view it belongs to."""

    model_config = ConfigDict(frozen=True)

    name: str
    description: str
    h0: float
    gamma0: float
    h1: float
    gamma1: float
    r: float = 0.0
    phi: float = 0.0
    r_values: List[float] = Field(default_factory=list)

    @property
    def quench(self) -> QuenchSpec:
        return QuenchSpec.from_values(self.h0, self.gamma0, self.h1, self.gamma1)

    @property
    def squeeze(self) -> SqueezeSpec:
        return SqueezeSpec(r=self.r, phi=self.phi)

    def as_defaults(self) -> Dict[str, object]:
        """Argparse defaults contributed by this preset."""
        defaults: Dict[str, object] = {
            "h0": self.h0,
            "gamma0": self.gamma0,
            "h1": self.h1,
            "gamma1": self.gamma1,
            "r": self.r,
            "phi": self.phi,
        }
        if self.r_values:
            defaults["r_values"] = ",".join(repr(r) for r in self.r_values)
        return defaults


_FISHER_R = [0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2]

PRESETS: Dict[str, Preset] = {
    preset.name: preset
    for preset in [
        Preset(
            name="fig1a",
            description="Fisher zeros, quench across the critical point, real xi",
            h0=1.5, gamma0=1.0, h1=0.5, gamma1=1.0, phi=0.0, r_values=_FISHER_R,
        ),
        Preset(
            name="fig1b",
            description="Fisher zeros, quench across the critical point, phi = pi/3",
            h0=1.5, gamma0=1.0, h1=0.5, gamma1=1.0, phi=math.pi / 3, r_values=_FISHER_R,
        ),
        Preset(
            name="fig1c",
            description="Fisher zeros, quench inside the ferromagnetic phase, real xi",
            h0=0.8, gamma0=1.0, h1=0.2, gamma1=1.0, phi=0.0, r_values=_FISHER_R,
        ),
        Preset(
            name="fig1d",
            description="Fisher zeros, quench inside the ferromagnetic phase, phi = pi/3",
            h0=0.8, gamma0=1.0, h1=0.2, gamma1=1.0, phi=math.pi / 3, r_values=_FISHER_R,
        ),
        Preset(
            name="fig2",
            description="Rate function at the universal point for the intra-phase quench",
            h0=0.8, gamma0=1.0, h1=0.2, gamma1=1.0, r=math.pi / 4, phi=0.0,
        ),
        Preset(
            name="fig3a",
            description="Delta(r, phi) map, intra-phase Ising quench (DQPTs induced)",
            h0=0.8, gamma0=1.0, h1=0.2, gamma1=1.0,
        ),
        Preset(
            name="fig3b",
            description="Delta(r, phi) map, quench near the XX limit (DQPTs suppressed)",
            h0=0.2, gamma0=0.1, h1=0.8, gamma1=0.1,
        ),
        Preset(
            name="fig4",
            description="Geometric phase at the universal point",
            h0=0.8, gamma0=1.0, h1=0.2, gamma1=1.0, r=math.pi / 4, phi=0.0,
        ),
    ]
}


def get_preset(name: str) -> Preset:
    """Look up a preset by name."""
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidArgumentException(
            f"unknown preset '{name}', choose from {', '.join(sorted(PRESETS))}", field="preset"
        ) from None


__all__ = ["Preset", "PRESETS", "get_preset"]
