"""Unit tests for named quench presets."""

import math

import pytest

from app.api.cli import float_list
from app.api.exceptions import InvalidArgumentException
from app.services.presets import PRESETS, get_preset


def test_all_views_present():
    """Test that every reproduced view has a preset."""
    assert set(PRESETS) == {"fig1a", "fig1b", "fig1c", "fig1d", "fig2", "fig3a", "fig3b", "fig4"}


def test_fisher_presets_carry_strengths():
    """Test the squeezing strengths of the Fisher-zero presets."""
    preset = get_preset("fig1b")
    assert preset.r_values[-1] == pytest.approx(math.pi / 2)
    assert preset.squeeze.phi == pytest.approx(math.pi / 3)
    assert preset.quench.pre.h == 1.5


def test_universal_presets():
    """Test that the universal-point views sit at r = pi/4, phi = 0."""
    assert get_preset("fig2").squeeze.is_universal_point
    assert get_preset("fig4").squeeze.is_universal_point


def test_as_defaults_round_trip():
    """Test that preset defaults parse back through the CLI list type."""
    defaults = get_preset("fig1a").as_defaults()
    assert defaults["h0"] == 1.5
    assert float_list(defaults["r_values"]) == get_preset("fig1a").r_values
    assert "r_values" not in get_preset("fig3a").as_defaults()


def test_unknown_preset():
    """Test lookup of a missing preset."""
    with pytest.raises(InvalidArgumentException) as exc_info:
        get_preset("fig9")
    assert exc_info.value.details["field"] == "preset"
