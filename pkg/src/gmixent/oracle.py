"""Ground-truth entropy: seeded Monte Carlo and, for n <= 2, grid quadrature.

These are the reference values every percentage error is measured
against.  Monte Carlo reports its standard error; the quadrature oracle
reports its normalization defect as a (very small) error proxy.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.integrate import simpson

from .errors import UnsupportedDimensionError
from .estimates import EntropyEstimate
from .mixture import GaussianMixture, _sample_with_rng, log_density

_CHUNK = 500_000

# Below this log-density the integrand -f ln f is flushed to zero; exp would
# underflow anyway and the true contribution is below 1e-300.
_LOG_FLOOR = -700.0

MIN_MC_SAMPLES = 1_000
MIN_GRID_NODES = 2001


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("GMIXENT_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _chunk_stats(mix: GaussianMixture, count: int, seed_seq) -> tuple[int, float, float]:
    rng = np.random.Generator(np.random.Philox(seed_seq))
    points = _sample_with_rng(mix, count, rng)
    values = -log_density(mix, points)
    mean = float(values.mean())
    m2 = float(((values - mean) ** 2).sum())
    return count, mean, m2


def _merge(n1, mean1, m2_1, n2, mean2, m2_2):
    n = n1 + n2
    delta = mean2 - mean1
    mean = mean1 + delta * n2 / n
    m2 = m2_1 + m2_2 + delta * delta * n1 * n2 / n
    return n, mean, m2


def mc_entropy(
    mix: GaussianMixture,
    n_samples: int,
    seed,
    workers: int | None = None,
) -> EntropyEstimate:
    """Monte Carlo entropy: the sample mean of -ln f over mixture draws.

    Work is split into fixed 500k-sample chunks with independent Philox
    streams spawned from the seed, merged in chunk order with exact
    mean/M2 combination, so the result does not depend on the worker
    count.  ``workers`` defaults to the GMIXENT_THREADS env var (or 1).
    """
    if n_samples < MIN_MC_SAMPLES:
        raise ValueError(f"need at least {MIN_MC_SAMPLES} samples")
    counts = [_CHUNK] * (n_samples // _CHUNK)
    if n_samples % _CHUNK:
        counts.append(n_samples % _CHUNK)
    seeds = np.random.SeedSequence(seed).spawn(len(counts))

    n_workers = _worker_count(workers)
    if n_workers == 1:
        stats = [_chunk_stats(mix, c, s) for c, s in zip(counts, seeds)]
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            stats = list(pool.map(lambda cs: _chunk_stats(mix, *cs), zip(counts, seeds)))

    total, mean, m2 = stats[0]
    for part in stats[1:]:
        total, mean, m2 = _merge(total, mean, m2, *part)
    std_error = math.sqrt(m2 / (total - 1)) / math.sqrt(total)
    return EntropyEstimate(
        value=mean,
        method="mc",
        params={"n_samples": n_samples, "seed": seed},
        std_error=std_error,
    )


def _axis_grid(mix: GaussianMixture, axis: int, nodes: int) -> np.ndarray:
    spread = 8.0 * math.sqrt(
        max(float(np.linalg.eigvalsh(c.covariance).max()) for c in mix.components)
    )
    lo = min(c.mean[axis] for c in mix.components) - spread
    hi = max(c.mean[axis] for c in mix.components) + spread
    return np.linspace(lo, hi, nodes)


def grid_entropy(mix: GaussianMixture, nodes_per_axis: int = MIN_GRID_NODES) -> EntropyEstimate:
    """Composite-Simpson quadrature of -f ln f over an 8-sigma box.

    Only for n <= 2.  The box extends 8 standard deviations (largest
    covariance eigenvalue) beyond the extreme component means on each
    axis.  The same pass integrates f itself; the deviation of that
    normalization from 1 is reported as the error proxy.
    """
    n = mix.dimension
    if n > 2:
        raise UnsupportedDimensionError(
            f"grid quadrature supports n <= 2, mixture has n = {n}"
        )
    if nodes_per_axis < MIN_GRID_NODES:
        raise ValueError(f"nodes_per_axis must be >= {MIN_GRID_NODES}")
    nodes = nodes_per_axis + 1 if nodes_per_axis % 2 == 0 else nodes_per_axis

    if n == 1:
        xs = _axis_grid(mix, 0, nodes)
        ld = log_density(mix, xs[:, None])
        f = np.exp(np.maximum(ld, _LOG_FLOOR))
        integrand = np.where(ld < _LOG_FLOOR, 0.0, -f * ld)
        value = float(simpson(integrand, x=xs))
        norm = float(simpson(f, x=xs))
    else:
        xs = _axis_grid(mix, 0, nodes)
        ys = _axis_grid(mix, 1, nodes)
        row_entropy = np.empty(nodes)
        row_norm = np.empty(nodes)
        block = 256
        for start in range(0, nodes, block):
            stop = min(start + block, nodes)
            gx, gy = np.meshgrid(xs[start:stop], ys, indexing="ij")
            pts = np.column_stack([gx.ravel(), gy.ravel()])
            ld = log_density(mix, pts).reshape(stop - start, nodes)
            f = np.exp(np.maximum(ld, _LOG_FLOOR))
            integrand = np.where(ld < _LOG_FLOOR, 0.0, -f * ld)
            row_entropy[start:stop] = simpson(integrand, x=ys, axis=1)
            row_norm[start:stop] = simpson(f, x=ys, axis=1)
        value = float(simpson(row_entropy, x=xs))
        norm = float(simpson(row_norm, x=xs))

    return EntropyEstimate(
        value=value,
        method="grid",
        params={"nodes_per_axis": nodes, "normalization": norm},
        std_error=abs(norm - 1.0) + 1e-9,
    )
