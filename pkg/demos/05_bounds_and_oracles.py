"""Bracketing the entropy: closed-form bounds around the oracles.

For every benchmark mixture the certified series bound sits below the
reference value and both classical upper bounds sit above it.  The
component bound is exact for one Gaussian and tightens as components
separate; the moment bound only sees the first two moments.
"""

import math

import numpy as np

import gmixent as gx

print(f"{'mixture':14s} {'series C=8':>11s} {'reference':>11s} "
      f"{'moment':>9s} {'component':>10s}")
for name in gx.preset_names():
    mix = gx.load_preset(name)
    mode = gx.find_mode(mix)
    table = gx.build_table(mix, 8)
    lower = gx.taylor_entropy(mix, table, gx.params_from_beta(mode, 8, 1.0))
    if mix.dimension <= 2:
        oracle = gx.grid_entropy(mix)
    else:
        oracle = gx.mc_entropy(mix, 1_000_000, seed=3)
    print(f"{name:14s} {lower.value:11.5f} {oracle.value:11.5f} "
          f"{gx.moment_upper_bound(mix):9.5f} {gx.component_upper_bound(mix):10.5f}")

print("\nthe two oracles cross-check each other on planar mixtures:")
mix = gx.load_preset("table1_row1")
grid = gx.grid_entropy(mix)
mc = gx.mc_entropy(mix, 1_000_000, seed=5)
print(f"  grid: {grid.value:.6f} (normalization defect {grid.params['normalization'] - 1:+.1e})")
print(f"  mc  : {mc.value:.6f} +- {mc.std_error:.6f}")

print("\nseparated components make the component bound tight:")
for gap in (2.0, 6.0, 12.0):
    pair = gx.GaussianMixture.from_parameters(
        [0.5, 0.5], [[gap / 2], [-gap / 2]], [np.eye(1)] * 2
    )
    excess = gx.component_upper_bound(pair) - gx.grid_entropy(pair).value
    print(f"  |w1 - w2| = {gap:4.1f}: bound - entropy = {excess:.2e} nats")

print("\nlevel-set volume of the unit planar Gaussian sanity checks:")
from scipy.integrate import quad

peak = 1 / math.sqrt(2 * math.pi)
mass, _ = quad(lambda s: s * gx.single_gaussian_volume(s, 1.0, 1), 0, peak, limit=500)
ent, _ = quad(lambda s: -s * math.log(s) * gx.single_gaussian_volume(s, 1.0, 1),
              0, peak, limit=500)
print(f"  integral of s V(s) ds      = {mass:.10f} (exact: 1)")
print(f"  integral of -s ln s V(s) ds = {ent:.10f} (exact: {0.5 * math.log(2 * math.pi * math.e):.10f})")
