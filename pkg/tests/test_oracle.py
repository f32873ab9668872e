import math

import numpy as np
import pytest

from gmixent import (
    GaussianMixture,
    UnsupportedDimensionError,
    grid_entropy,
    mc_entropy,
    single_gaussian_entropy,
)

STD_ENTROPY = 0.5 * math.log(2 * math.pi * math.e)


@pytest.fixture(scope="module")
def std_normal():
    return GaussianMixture.from_parameters([1.0], [[0.0]], [[[1.0]]])


@pytest.fixture(scope="module")
def two_bumps():
    return GaussianMixture.from_parameters([0.5, 0.5], [[1.0], [-1.0]], [np.eye(1)] * 2)


class TestGrid:
    def test_standard_normal_closed_form(self, std_normal):
        est = grid_entropy(std_normal)
        assert est.value == pytest.approx(STD_ENTROPY, abs=1e-7)

    def test_correlated_gaussian_closed_form(self):
        cov = [[2.0, 0.8], [0.8, 1.0]]
        mix = GaussianMixture.from_parameters([1.0], [[0.3, -0.7]], [cov])
        est = grid_entropy(mix)
        assert est.value == pytest.approx(single_gaussian_entropy(cov), abs=1e-6)

    def test_normalization_side_check(self, two_bumps):
        est = grid_entropy(two_bumps)
        assert est.params["normalization"] == pytest.approx(1.0, abs=1e-8)

    def test_rejects_high_dimension(self, preset_mixtures):
        with pytest.raises(UnsupportedDimensionError):
            grid_entropy(preset_mixtures["table1_row3"])

    def test_node_floor_enforced(self, std_normal):
        with pytest.raises(ValueError):
            grid_entropy(std_normal, nodes_per_axis=101)


class TestMonteCarlo:
    def test_standard_normal(self, std_normal):
        est = mc_entropy(std_normal, 10**6, seed=1)
        assert abs(est.value - STD_ENTROPY) < 3 * est.std_error

    def test_entropy_adds_over_independent_coordinates(self):
        mix = GaussianMixture.from_parameters([1.0], [[0.0, 0.0, 0.0]], [np.eye(3)])
        est = mc_entropy(mix, 10**6, seed=2)
        assert abs(est.value - 3 * STD_ENTROPY) < 3 * est.std_error

    def test_deterministic_per_seed(self, two_bumps):
        a = mc_entropy(two_bumps, 10**5, seed=7)
        b = mc_entropy(two_bumps, 10**5, seed=7)
        assert a.value == b.value and a.std_error == b.std_error

    def test_worker_count_does_not_change_result(self, two_bumps):
        a = mc_entropy(two_bumps, 1_200_000, seed=3, workers=1)
        b = mc_entropy(two_bumps, 1_200_000, seed=3, workers=4)
        assert a.value == b.value and a.std_error == b.std_error

    def test_error_shrinks_like_root_n(self, two_bumps):
        small = mc_entropy(two_bumps, 500_000, seed=11)
        large = mc_entropy(two_bumps, 1_000_000, seed=11)
        ratio = small.std_error / large.std_error
        assert math.sqrt(2) * 0.9 < ratio < math.sqrt(2) * 1.1

    def test_translation_invariance_in_distribution(self, two_bumps):
        moved = GaussianMixture.from_parameters(
            two_bumps.weights,
            [c.mean + 25.0 for c in two_bumps.components],
            [c.covariance for c in two_bumps.components],
        )
        a = mc_entropy(two_bumps, 400_000, seed=21)
        b = mc_entropy(moved, 400_000, seed=22)
        assert abs(a.value - b.value) < 3 * math.hypot(a.std_error, b.std_error)

    def test_sample_floor(self, std_normal):
        with pytest.raises(ValueError):
            mc_entropy(std_normal, 999, seed=1)


class TestCrossValidation:
    def test_oracles_agree(self, two_bumps):
        g = grid_entropy(two_bumps)
        m = mc_entropy(two_bumps, 10**6, seed=5)
        assert abs(g.value - m.value) < 3 * math.hypot(g.std_error, m.std_error)

    @pytest.mark.parametrize("name", ["table1_row1", "table1_row2"])
    def test_presets_agree(self, preset_mixtures, preset_oracles, name):
        grid = preset_oracles[name]  # grid for n <= 2
        mc = mc_entropy(preset_mixtures[name], 2_000_000, seed=6)
        assert abs(grid.value - mc.value) < 3 * math.hypot(
            grid.std_error, mc.std_error
        )
