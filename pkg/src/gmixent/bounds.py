"""Closed-form entropy baselines and the single-Gaussian level-set volume.

Two classical upper bounds: the moment-matching bound (a Gaussian with the
mixture's covariance maximizes entropy) and the component-decomposition
bound (mixing entropy plus the weighted component entropies).  The latter
is exact for a single Gaussian and tightens as the components separate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalDomainError
from .mixture import GaussianMixture, mixture_moments

_LOG_2PI_E = math.log(2.0 * math.pi * math.e)


@dataclass(frozen=True)
class BoundReport:
    moment_bound: float
    component_bound: float
    exact_if_single: float | None


def single_gaussian_entropy(covariance) -> float:
    """Exact differential entropy of one Gaussian: 0.5 ln det(2 pi e K)."""
    cov = np.atleast_2d(np.asarray(covariance, dtype=float))
    sign, log_det = np.linalg.slogdet(cov)
    if sign <= 0:
        raise ValueError("covariance must be positive definite")
    n = cov.shape[0]
    return 0.5 * (n * _LOG_2PI_E + log_det)


def moment_upper_bound(mix: GaussianMixture) -> float:
    """Entropy of the moment-matched Gaussian; always an upper bound."""
    _, cov = mixture_moments(mix)
    return single_gaussian_entropy(cov)


def component_upper_bound(mix: GaussianMixture) -> float:
    """Mixing entropy plus weighted component entropies.

    Equals the exact entropy for a single component and approaches it as
    the overlap between components vanishes.
    """
    mixing = -float(np.sum(mix.weights * np.log(mix.weights)))
    parts = sum(
        p * 0.5 * (mix.dimension * _LOG_2PI_E + c.log_det)
        for p, c in zip(mix.weights, mix.components)
    )
    return mixing + parts


def bound_report(mix: GaussianMixture) -> BoundReport:
    exact = single_gaussian_entropy(mix.components[0].covariance) if mix.n_components == 1 else None
    return BoundReport(
        moment_bound=moment_upper_bound(mix),
        component_bound=component_upper_bound(mix),
        exact_if_single=exact,
    )


def single_gaussian_volume(s, sigma: float = 1.0, n: int = 1):
    """Level-set volume V(s) of a spherical Gaussian N(0, sigma^2 I) in R^n.

    V(s) is the (n-1)-dimensional volume of the set where the density
    equals s.  Normalized so that the integral of s V(s) over (0, peak)
    is exactly 1:

        V(s) = (2 pi)^(n/2) sigma^n / Gamma(n/2) * (1/s) * ln(peak/s)^(n/2 - 1)

    For n = 1 this is 2 sigma / (s sqrt(2 ln(peak/s))).  Accepts scalars
    or arrays of s; every s must lie strictly inside (0, peak).
    """
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    if n < 1:
        raise ValueError("dimension must be >= 1")
    s_arr = np.asarray(s, dtype=float)
    peak = (2.0 * math.pi * sigma * sigma) ** (-n / 2.0)
    if np.any(s_arr <= 0.0) or np.any(s_arr >= peak):
        raise NumericalDomainError(
            f"level value must lie in (0, {peak:.6g}), the density's open range"
        )
    const = (2.0 * math.pi) ** (n / 2.0) * sigma**n / math.gamma(n / 2.0)
    out = const / s_arr * np.log(peak / s_arr) ** (n / 2.0 - 1.0)
    return float(out) if np.isscalar(s) or s_arr.ndim == 0 else out
