"""Shared fixtures: presets with their modes, tables and oracle values.

The oracle entropies are the expensive part of the suite (Monte Carlo
with 10^7 samples for the n > 2 mixtures), so they are computed once per
session and shared by every test that needs a reference value.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gmixent import (
    build_table,
    find_mode,
    grid_entropy,
    load_preset,
    mc_entropy,
    preset_names,
)

ORACLE_SEED = 12345
ORACLE_SAMPLES = 10_000_000


@pytest.fixture(scope="session")
def preset_mixtures():
    return {name: load_preset(name) for name in preset_names()}


@pytest.fixture(scope="session")
def preset_modes(preset_mixtures):
    return {name: find_mode(mix) for name, mix in preset_mixtures.items()}


@pytest.fixture(scope="session")
def preset_tables(preset_mixtures):
    return {name: build_table(mix, 10) for name, mix in preset_mixtures.items()}


@pytest.fixture(scope="session")
def preset_oracles(preset_mixtures):
    """Reference entropies: grid quadrature for n <= 2, seeded MC otherwise."""
    out = {}
    for name, mix in preset_mixtures.items():
        if mix.dimension <= 2:
            out[name] = grid_entropy(mix)
        else:
            out[name] = mc_entropy(mix, ORACLE_SAMPLES, ORACLE_SEED)
    return out
