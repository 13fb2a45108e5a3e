"""Pytest configuration and fixtures."""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.entities.params import UNIVERSAL_R, QuenchSpec, SqueezeSpec


@pytest.fixture
def cross_quench() -> QuenchSpec:
    """Ising quench across the critical point, 1.5 -> 0.5."""
    return QuenchSpec.from_values(1.5, 1.0, 0.5, 1.0)


@pytest.fixture
def intra_quench() -> QuenchSpec:
    """Ising quench inside the ferromagnetic phase, 0.8 -> 0.2."""
    return QuenchSpec.from_values(0.8, 1.0, 0.2, 1.0)


@pytest.fixture
def xx_quench() -> QuenchSpec:
    """Weakly anisotropic quench 0.2 -> 0.8 at gamma = 0.1."""
    return QuenchSpec.from_values(0.2, 0.1, 0.8, 0.1)


@pytest.fixture
def null_quench() -> QuenchSpec:
    """No quench at all."""
    return QuenchSpec.from_values(1.5, 1.0, 1.5, 1.0)


@pytest.fixture
def no_squeeze() -> SqueezeSpec:
    return SqueezeSpec()


@pytest.fixture
def universal_squeeze() -> SqueezeSpec:
    """The maximally entangling squeeze r = pi/4, phi = 0."""
    return SqueezeSpec(r=UNIVERSAL_R, phi=0.0)


@pytest.fixture
def complex_squeeze() -> SqueezeSpec:
    return SqueezeSpec(r=0.5, phi=math.pi / 3)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded random generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def critical_momentum() -> float:
    """Analytic critical momentum of the 1.5 -> 0.5 quench, cos k* = -(1 + h0 h1) / (h0 + h1)."""
    return math.acos(-0.875)


@pytest.fixture
def critical_time() -> float:
    """First critical time of the 1.5 -> 0.5 quench, pi / (2 sqrt(0.375))."""
    return math.pi / (2.0 * math.sqrt(0.375))
