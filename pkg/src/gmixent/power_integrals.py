"""Exact integrals of Gaussian products and of integer powers of a mixture.

The integral of f^a over R^n expands, by the multinomial theorem, into a
sum over all nonnegative integer q-tuples summing to a.  Each term is a
product of component Gaussians raised to integer powers, which integrates
in closed form: completing the square gives a single Gaussian with
precision sum_j t_j K_j^{-1}, scaled by a constant whose log we keep.

Everything here works in log space by default.  Multinomial coefficients
go through log-gamma and the terms (all positive) are accumulated with a
streaming log-sum-exp, so no intermediate quantity under- or overflows
even for high dimensions.  A linear-space mode (optionally with Kahan
compensation) exists purely so the effect of naive accumulation can be
measured; it is never the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np
from scipy.linalg import solve_triangular

from .errors import ResourceLimitError
from .mixture import GaussianMixture

_LOG_2PI = math.log(2.0 * math.pi)

# Refuse expansions with more terms than this (stars-and-bars count).
COMPOSITION_BUDGET = 10**8

MAX_TABLE_ORDER = 16


@dataclass(frozen=True)
class Composition:
    """Nonnegative integer exponents, one per mixture component."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) < 1 or any(t < 0 for t in self.counts):
            raise ValueError("composition entries must be nonnegative integers")
        if self.total < 1:
            raise ValueError("composition must sum to a positive total")

    @property
    def total(self) -> int:
        return sum(self.counts)


def composition_count(q: int, total: int) -> int:
    """Number of nonnegative q-tuples summing to ``total``."""
    return math.comb(total + q - 1, q - 1)


def enumerate_compositions(q: int, total: int) -> Iterator[Composition]:
    """Yield every nonnegative q-tuple summing to ``total``, lexicographically.

    The stream is generated on the fly (memory O(q)).  Raises
    ResourceLimitError if the count exceeds COMPOSITION_BUDGET.
    """
    if q < 1 or total < 1:
        raise ValueError("need q >= 1 and total >= 1")
    count = composition_count(q, total)
    if count > COMPOSITION_BUDGET:
        raise ResourceLimitError(
            f"{count} compositions of {total} into {q} parts exceeds the "
            f"budget of {COMPOSITION_BUDGET}"
        )

    def rec(remaining: int, slots: int):
        if slots == 1:
            yield (remaining,)
            return
        for v in range(remaining + 1):
            for rest in rec(remaining - v, slots - 1):
                yield (v,) + rest

    for counts in rec(total, q):
        yield Composition(counts)


class _ComponentArrays(NamedTuple):
    precisions: np.ndarray       # (q, n, n)
    precision_means: np.ndarray  # (q, n)   K_j^{-1} w_j
    mean_quads: np.ndarray       # (q,)     w_j^T K_j^{-1} w_j
    log_dets: np.ndarray         # (q,)     ln det K_j


def _component_arrays(mix: GaussianMixture) -> _ComponentArrays:
    precisions = np.stack([c.precision() for c in mix.components])
    pmeans = np.stack([prec @ c.mean for prec, c in zip(precisions, mix.components)])
    quads = np.array([pm @ c.mean for pm, c in zip(pmeans, mix.components)])
    log_dets = np.array([c.log_det for c in mix.components])
    return _ComponentArrays(precisions, pmeans, quads, log_dets)


@dataclass(frozen=True)
class ProductGaussianMoment:
    """Completed square of a product of Gaussian powers.

    ``precision`` and ``mean`` describe the single Gaussian the product is
    proportional to; ``log_value`` is the log of the product's integral.
    """

    precision: np.ndarray
    mean: np.ndarray
    log_value: float

    def covariance(self) -> np.ndarray:
        cov = np.linalg.inv(self.precision)
        return 0.5 * (cov + cov.T)


def _combined_moment(arrays: _ComponentArrays, counts, n: int) -> tuple[np.ndarray, np.ndarray, float]:
    t = np.asarray(counts, dtype=float)
    a = t.sum()
    prec = np.einsum("j,jkl->kl", t, arrays.precisions)
    rhs = t @ arrays.precision_means
    factor = np.linalg.cholesky(prec)
    log_det_prec = 2.0 * float(np.log(np.diag(factor)).sum())
    y = solve_triangular(factor, rhs, lower=True)
    mean = solve_triangular(factor.T, y, lower=False)
    quad = float(t @ arrays.mean_quads - y @ y)
    log_value = (
        -0.5 * n * (a - 1.0) * _LOG_2PI
        - 0.5 * float(t @ arrays.log_dets)
        - 0.5 * log_det_prec
        - 0.5 * quad
    )
    return prec, mean, log_value


def log_product_integral(mix: GaussianMixture, composition: Composition) -> ProductGaussianMoment:
    """Closed-form integral of prod_j g_j^{t_j} over R^n, in log form.

    All determinants and quadratic forms go through Cholesky factors;
    no covariance is ever inverted explicitly on the evaluation path.
    """
    counts = tuple(composition.counts)
    if len(counts) != mix.n_components:
        raise ValueError(
            f"composition has {len(counts)} entries for {mix.n_components} components"
        )
    arrays = _component_arrays(mix)
    prec, mean, log_value = _combined_moment(arrays, counts, mix.dimension)
    return ProductGaussianMoment(precision=prec, mean=mean, log_value=log_value)


def _log_multinomial(total: int, counts) -> float:
    return math.lgamma(total + 1) - sum(math.lgamma(t + 1) for t in counts)


def _power_integral_from_arrays(
    arrays: _ComponentArrays,
    log_weights: np.ndarray,
    q: int,
    n: int,
    a: int,
    arithmetic: str,
    compensated: bool,
) -> float:
    if arithmetic == "log":
        # streaming log-sum-exp: all terms are positive
        running_max = -math.inf
        running_sum = 0.0
        for comp in enumerate_compositions(q, a):
            t = comp.counts
            _, _, log_d = _combined_moment(arrays, t, n)
            term = _log_multinomial(a, t) + float(t @ log_weights) + log_d
            if term > running_max:
                running_sum = running_sum * math.exp(running_max - term) + 1.0
                running_max = term
            else:
                running_sum += math.exp(term - running_max)
        return math.exp(running_max + math.log(running_sum))

    if arithmetic != "linear":
        raise ValueError(f"unknown arithmetic mode {arithmetic!r}")
    weights = np.exp(log_weights)
    total = 0.0
    carry = 0.0
    for comp in enumerate_compositions(q, a):
        t = comp.counts
        _, _, log_d = _combined_moment(arrays, t, n)
        coeff = math.exp(_log_multinomial(a, t))
        term = coeff * float(np.prod(weights ** np.asarray(t))) * math.exp(log_d)
        if compensated:
            y = term - carry
            s = total + y
            carry = (s - total) - y
            total = s
        else:
            total += term
    return total


def power_integral(
    mix: GaussianMixture,
    a: int,
    arithmetic: str = "log",
    compensated: bool = False,
) -> float:
    """Integral of f^a over R^n for integer a >= 1, evaluated exactly.

    ``arithmetic`` selects the accumulation mode: "log" (default, robust)
    or "linear" (naive float sum, with optional Kahan compensation when
    ``compensated`` is set).
    """
    if a < 1:
        raise ValueError("power must be a positive integer")
    arrays = _component_arrays(mix)
    return _power_integral_from_arrays(
        arrays,
        np.log(mix.weights),
        mix.n_components,
        mix.dimension,
        a,
        arithmetic,
        compensated,
    )


@dataclass(frozen=True)
class PowerIntegralTable:
    """Cached integrals of f^a for a = 1..max_order (1-based access)."""

    values: np.ndarray
    max_order: int
    arithmetic: str = "log"

    def value(self, a: int) -> float:
        if not 1 <= a <= self.max_order:
            raise ValueError(f"table covers powers 1..{self.max_order}, got {a}")
        return float(self.values[a - 1])

    def covers(self, order: int) -> bool:
        return order <= self.max_order


def build_table(
    mix: GaussianMixture,
    max_order: int,
    arithmetic: str = "log",
    compensated: bool = False,
) -> PowerIntegralTable:
    """Evaluate the power integrals once for every a = 1..max_order.

    Estimators of different orders and parameters then share this table,
    which is where essentially all of their cost lives.
    """
    if not 1 <= max_order <= MAX_TABLE_ORDER:
        raise ValueError(f"max_order must be in 1..{MAX_TABLE_ORDER}")
    arrays = _component_arrays(mix)
    log_w = np.log(mix.weights)
    values = np.array(
        [
            _power_integral_from_arrays(
                arrays, log_w, mix.n_components, mix.dimension, a, arithmetic, compensated
            )
            for a in range(1, max_order + 1)
        ]
    )
    if abs(values[0] - 1.0) > 1e-12:
        raise RuntimeError(
            f"power integral at a=1 is {values[0]:.17g}, expected 1 (normalization)"
        )
    if np.any(values <= 0.0):
        raise RuntimeError("power integrals must be positive")
    return PowerIntegralTable(values=values, max_order=max_order, arithmetic=arithmetic)
