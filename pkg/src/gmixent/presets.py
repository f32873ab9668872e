"""Bundled benchmark mixtures.

Five configurations spanning q = 3..5 components and n = 2..8 dimensions,
used throughout the tests and by the CLI as named presets.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .mixture import GaussianMixture


def _spherical(weights, means, dim) -> GaussianMixture:
    covs = [np.eye(dim)] * len(weights)
    return GaussianMixture.from_parameters(weights, means, covs)


def _table1_row1() -> GaussianMixture:
    return _spherical(
        weights=[0.2, 0.3, 0.5],
        means=[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.5]],
        dim=2,
    )


def _table1_row2() -> GaussianMixture:
    return GaussianMixture.from_parameters(
        weights=[0.2, 0.3, 0.5],
        means=[[0.0, 0.0], [-1.5, 1.5], [1.5, 1.5]],
        covariances=[
            [[1.0, 0.0], [0.0, 3.0]],
            [[1.0, 0.2], [0.2, 1.0]],
            [[1.0, -0.2], [-0.2, 1.0]],
        ],
    )


def _table1_row3() -> GaussianMixture:
    return _spherical(
        weights=[0.2, 0.3, 0.3, 0.2],
        means=[
            [0.0, 0.0, 0.0],
            [-1.5, 1.5, -1.5],
            [1.5, 1.5, 1.5],
            [1.0, 1.0, 1.0],
        ],
        dim=3,
    )


def _table1_row4() -> GaussianMixture:
    alternating = [-1.5, 1.5, -1.5, 1.5, -1.5, 1.5, -1.5, 1.5]
    return _spherical(
        weights=[0.2, 0.3, 0.3, 0.2],
        means=[
            [0.0] * 8,
            alternating,
            [1.5] * 8,
            [1.0] * 8,
        ],
        dim=8,
    )


def _table1_row5() -> GaussianMixture:
    return _spherical(
        weights=[0.2, 0.3, 0.3, 0.1, 0.1],
        means=[
            [0.0, 0.0, 0.0, 0.0],
            [-1.5, 1.5, -1.5, 1.5],
            [1.5, 1.5, 1.5, 1.5],
            [1.0, 1.0, 1.0, 1.0],
            [-3.0, 3.0, -3.0, 3.0],
        ],
        dim=4,
    )


_BUILDERS = {
    "table1_row1": _table1_row1,
    "table1_row2": _table1_row2,
    "table1_row3": _table1_row3,
    "table1_row4": _table1_row4,
    "table1_row5": _table1_row5,
}


def preset_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def load_preset(name: str) -> GaussianMixture:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        known = ", ".join(preset_names())
        raise ConfigError(f"unknown preset {name!r}; available: {known}") from None
    return builder()
