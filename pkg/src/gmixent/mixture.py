"""Gaussian mixtures: stable density evaluation, sampling, moments, mode search.

All objects are immutable after construction (arrays are marked read-only),
so every function here is safe to call concurrently.  Sampling takes the
seed explicitly and uses the counter-based Philox generator, which makes
draws reproducible across platforms and lets parallel callers pick disjoint
streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, solve_triangular
from scipy.special import logsumexp

from .errors import ConvergenceError

_LOG_2PI = math.log(2.0 * math.pi)


class GaussianComponent:
    """One multivariate normal with cached Cholesky factor and log-determinant.

    The covariance must be symmetric (1e-12 relative) and positive definite;
    factorizations whose smallest pivot falls below 1e-12 of the largest
    diagonal entry are rejected as numerically singular rather than
    regularized.
    """

    __slots__ = ("mean", "covariance", "chol", "log_det", "_precision")

    def __init__(self, mean, covariance):
        mean = np.array(mean, dtype=float).reshape(-1)
        cov = np.array(covariance, dtype=float)
        n = mean.shape[0]
        if n == 0:
            raise ValueError("component mean must have at least one entry")
        if cov.shape != (n, n):
            raise ValueError(
                f"covariance shape {cov.shape} does not match mean length {n}"
            )
        scale = float(np.abs(cov).max())
        if scale == 0.0 or not np.allclose(cov, cov.T, rtol=0.0, atol=1e-12 * scale):
            raise ValueError("covariance must be symmetric to 1e-12 relative tolerance")
        try:
            chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError:
            raise ValueError("covariance is not positive definite") from None
        pivots = np.diag(chol) ** 2
        if pivots.min() < 1e-12 * np.diag(cov).max():
            raise ValueError(
                "covariance is numerically singular "
                "(a pivot is below 1e-12 of the largest diagonal entry)"
            )
        self.mean = mean
        self.covariance = cov
        self.chol = chol
        self.log_det = 2.0 * float(np.log(np.diag(chol)).sum())
        self._precision = None
        for arr in (self.mean, self.covariance, self.chol):
            arr.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.mean.shape[0]

    def precision(self) -> np.ndarray:
        """Inverse covariance, computed once from the cached factor."""
        if self._precision is None:
            prec = cho_solve((self.chol, True), np.eye(self.dimension))
            prec = 0.5 * (prec + prec.T)
            prec.setflags(write=False)
            self._precision = prec
        return self._precision

    def log_density(self, points: np.ndarray) -> np.ndarray:
        """Log of this component's normal density at each row of ``points``."""
        diff = np.atleast_2d(points) - self.mean
        y = solve_triangular(self.chol, diff.T, lower=True)
        maha = np.einsum("ij,ij->j", y, y)
        return -0.5 * (self.dimension * _LOG_2PI + self.log_det + maha)

    def peak_value(self) -> float:
        """Density at the component's own mean (its maximum)."""
        return math.exp(-0.5 * (self.dimension * _LOG_2PI + self.log_det))


class GaussianMixture:
    """Convex combination of Gaussian components on R^n.

    Weights must be strictly positive and sum to 1 within 1e-12; all
    components must share the same dimension.
    """

    __slots__ = ("weights", "components", "dimension")

    def __init__(self, weights, components):
        weights = np.array(weights, dtype=float).reshape(-1)
        components = tuple(components)
        if len(components) < 1:
            raise ValueError("mixture needs at least one component")
        if weights.shape[0] != len(components):
            raise ValueError(
                f"{weights.shape[0]} weights given for {len(components)} components"
            )
        if np.any(weights <= 0.0):
            raise ValueError("all mixture weights must be > 0")
        if abs(float(weights.sum()) - 1.0) > 1e-12:
            raise ValueError("mixture weights must sum to 1 within 1e-12")
        dims = {c.dimension for c in components}
        if len(dims) != 1:
            raise ValueError(f"components disagree on dimension: {sorted(dims)}")
        self.weights = weights
        self.components = components
        self.dimension = dims.pop()
        self.weights.setflags(write=False)

    @classmethod
    def from_parameters(cls, weights, means, covariances) -> "GaussianMixture":
        comps = [GaussianComponent(m, k) for m, k in zip(means, covariances)]
        return cls(weights, comps)

    @property
    def n_components(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class ModeResult:
    """Outcome of the density-maximum search.

    ``peak_density`` is guaranteed to be at least the mixture density at
    every component mean (those points are always candidates).
    """

    argmax: np.ndarray
    peak_density: float
    starts_converged: int
    iterations_per_start: tuple[int, ...]


def component_log_densities(mix: GaussianMixture, points: np.ndarray) -> np.ndarray:
    """Matrix of per-component log densities, shape (len(points), q)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return np.column_stack([c.log_density(points) for c in mix.components])


def log_density(mix: GaussianMixture, x) -> float | np.ndarray:
    """ln f(x) for the mixture, via log-sum-exp over components.

    Accepts a single point of shape (n,) or a batch of shape (m, n);
    returns a float or an array of shape (m,) accordingly.  Finite for
    every finite x, even deep in the tails where the linear-space sum
    underflows.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    if pts.ndim != 2 or pts.shape[1] != mix.dimension:
        raise ValueError(
            f"point dimension {x.shape[-1] if x.ndim else 'scalar'} does not match "
            f"mixture dimension {mix.dimension}"
        )
    logs = component_log_densities(mix, pts) + np.log(mix.weights)
    out = logsumexp(logs, axis=1)
    return float(out[0]) if single else out


def _sample_with_rng(mix: GaussianMixture, count: int, rng: np.random.Generator) -> np.ndarray:
    labels = rng.choice(mix.n_components, size=count, p=mix.weights)
    noise = rng.standard_normal((count, mix.dimension))
    out = np.empty((count, mix.dimension))
    for j, comp in enumerate(mix.components):
        mask = labels == j
        out[mask] = comp.mean + noise[mask] @ comp.chol.T
    return out


def sample(mix: GaussianMixture, count: int, seed) -> np.ndarray:
    """Draw ``count`` points from the mixture, shape (count, n).

    Component choice is categorical in the weights; each draw is then
    mean + L z with z standard normal and L the cached Cholesky factor.
    The generator is Philox keyed on ``seed``: the same seed gives
    bit-identical output.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    return _sample_with_rng(mix, count, rng)


def mixture_moments(mix: GaussianMixture) -> tuple[np.ndarray, np.ndarray]:
    """Mean vector and covariance matrix of the mixture.

    cov = sum_j p_j (w_j w_j^T + K_j) - mean mean^T, symmetrized.
    """
    mean = np.zeros(mix.dimension)
    second = np.zeros((mix.dimension, mix.dimension))
    for p, comp in zip(mix.weights, mix.components):
        mean += p * comp.mean
        second += p * (np.outer(comp.mean, comp.mean) + comp.covariance)
    cov = second - np.outer(mean, mean)
    return mean, 0.5 * (cov + cov.T)


def sum_of_component_peaks(mix: GaussianMixture) -> float:
    """sum_j p_j g_j(w_j): a cheap upper bound for the density maximum."""
    return float(
        sum(p * c.peak_value() for p, c in zip(mix.weights, mix.components))
    )


def find_mode(mix: GaussianMixture, step_tol: float = 1e-10, max_iter: int = 500) -> ModeResult:
    """Locate the global density maximum by multi-start fixed-point ascent.

    From every component mean and from the mixture mean, iterate

        x <- (sum_j g_j(x) P_j)^(-1) sum_j g_j(x) P_j w_j

    with g_j the posterior responsibilities and P_j the component
    precisions.  Mixture modes lie in the convex hull of the means, and
    this mean-shift-style update climbs the density without derivatives.
    Stops when the step norm drops below ``step_tol`` or after
    ``max_iter`` iterations.

    The reported peak also considers the start points themselves, so it
    never falls below the mixture density at any component mean.  If no
    start converges, raises ConvergenceError carrying the best point seen.
    """
    precisions = [c.precision() for c in mix.components]
    shifted = [prec @ c.mean for prec, c in zip(precisions, mix.components)]
    mixture_mean, _ = mixture_moments(mix)
    starts = [c.mean.copy() for c in mix.components] + [mixture_mean]

    candidates = [(float(log_density(mix, s)), s) for s in starts]
    converged_count = 0
    iterations = []
    log_w = np.log(mix.weights)

    for start in starts:
        x = start.copy()
        converged = False
        used = 0
        for it in range(1, max_iter + 1):
            logs = component_log_densities(mix, x[None, :])[0] + log_w
            resp = np.exp(logs - logsumexp(logs))
            matrix = np.einsum("j,jkl->kl", resp, np.asarray(precisions))
            rhs = resp @ np.asarray(shifted)
            x_new = np.linalg.solve(matrix, rhs)
            step = float(np.linalg.norm(x_new - x))
            x = x_new
            used = it
            if step < step_tol:
                converged = True
                break
        iterations.append(used)
        if converged:
            converged_count += 1
            candidates.append((float(log_density(mix, x)), x))

    best_log, best_x = max(candidates, key=lambda c: c[0])
    if converged_count == 0:
        raise ConvergenceError(
            f"mode search did not converge from any of {len(starts)} starts "
            f"within {max_iter} iterations",
            best_point=best_x,
            best_value=math.exp(best_log),
        )
    return ModeResult(
        argmax=best_x,
        peak_density=math.exp(best_log),
        starts_converged=converged_count,
        iterations_per_start=tuple(iterations),
    )
