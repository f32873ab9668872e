"""Entropy lower bounds from a truncated logarithm series.

Writing h = -ln m - E[ln(f/m)] and expanding the log around 1 gives a
polynomial in f whose integrals are known in closed form.  With the scale
m at or above the density maximum every series term is nonnegative, so
truncation yields a certified lower bound that improves monotonically
with the order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NumericalDomainError
from .estimates import EntropyEstimate
from .mixture import GaussianMixture, ModeResult, find_mode, sum_of_component_peaks
from .power_integrals import PowerIntegralTable, build_table

MAX_ORDER = 30

POLICY_BETA = "beta_times_peak"
POLICY_SUM_OF_PEAKS = "sum_of_peaks"

# Guard factor applied when the scale equals a numerically found peak, so a
# slightly underestimated maximum cannot invalidate the lower-bound claim.
_PEAK_GUARD = 1.0 + 1e-9


@dataclass(frozen=True)
class TaylorParams:
    """Resolved inputs of one Taylor evaluation.

    ``scale`` is the expansion scale m; ``peak_density`` the density
    maximum it was resolved against.  ``certified`` records that the
    scale is a guaranteed upper bound for the density, which is what
    makes the result a lower bound on the entropy.
    """

    order: int
    scale: float
    peak_density: float
    policy: str
    beta: float | None
    certified: bool

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.order > MAX_ORDER:
            raise ValueError(f"order capped at {MAX_ORDER}")
        if self.scale <= 0.0:
            raise ValueError("scale must be positive")


def params_from_beta(mode: ModeResult, order: int, beta: float) -> TaylorParams:
    """Scale policy m = beta * peak.  beta >= 1/2 keeps the series convergent."""
    if beta < 0.5:
        raise NumericalDomainError(
            f"beta={beta} is below 1/2, outside the series' convergence range"
        )
    scale = beta * mode.peak_density
    if beta == 1.0:
        scale *= _PEAK_GUARD
    return TaylorParams(
        order=order,
        scale=scale,
        peak_density=mode.peak_density,
        policy=POLICY_BETA,
        beta=beta,
        certified=beta >= 1.0,
    )


def params_sum_of_peaks(mix: GaussianMixture, mode: ModeResult, order: int) -> TaylorParams:
    """Scale policy m = sum_j p_j g_j(w_j), always >= the density maximum."""
    return TaylorParams(
        order=order,
        scale=sum_of_component_peaks(mix),
        peak_density=mode.peak_density,
        policy=POLICY_SUM_OF_PEAKS,
        beta=None,
        certified=True,
    )


def harmonic_exact(k: int) -> Fraction:
    """k-th harmonic number as an exact rational (H_0 = 0)."""
    if k < 0:
        raise ValueError("harmonic number index must be >= 0")
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


def harmonic_number(k: int) -> float:
    return float(harmonic_exact(k))


@dataclass(frozen=True)
class TaylorCoefficients:
    """Polynomial coefficients c_1..c_C of the truncated-series estimator."""

    coeffs: np.ndarray
    harmonic: float  # value of c_1


def taylor_coefficients_exact(order: int, scale) -> list[Fraction]:
    """Exact rational coefficients for a given order and scale.

    c_1 is the harmonic number H_{order-1}; for a >= 2,
    c_a = (-1)^(a+1) / (scale^(a-1) (a-1)) * C(order-1, a-1).
    The scale is taken at its exact binary-float value, so the floats
    returned by :func:`taylor_coefficients` are correctly rounded.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if order > MAX_ORDER:
        raise ValueError(f"order capped at {MAX_ORDER}")
    m = Fraction(scale)
    if m <= 0:
        raise ValueError("scale must be positive")
    coeffs = [harmonic_exact(order - 1)]
    for a in range(2, order + 1):
        num = (-1) ** (a + 1) * math.comb(order - 1, a - 1)
        coeffs.append(Fraction(num, a - 1) / m ** (a - 1))
    return coeffs


def taylor_coefficients(order: int, scale: float) -> TaylorCoefficients:
    exact = taylor_coefficients_exact(order, scale)
    return TaylorCoefficients(
        coeffs=np.array([float(c) for c in exact]),
        harmonic=float(exact[0]),
    )


def taylor_entropy(
    mix: GaussianMixture,
    table: PowerIntegralTable,
    params: TaylorParams,
) -> EntropyEstimate:
    """Entropy estimate of the given order at the resolved scale.

    Uses the form -ln m + H_{C-1} - m sum_{a=1}^{C-1} B_{a+1}/a * C(C-1, a)
    with B_a = (-1)^a (integral of f^a) / m^a.  When the scale is a
    certified density bound the estimate is flagged as a lower bound.
    """
    order = params.order
    if not table.covers(order):
        raise ValueError(f"table covers orders up to {table.max_order}, need {order}")
    m = params.scale
    if m < 0.5 * params.peak_density * (1.0 - 1e-12):
        raise NumericalDomainError(
            f"scale m={m:.6g} is below half the density maximum "
            f"{params.peak_density:.6g}; the series does not converge there"
        )
    total = 0.0
    for a in range(1, order):
        b_next = (-1) ** (a + 1) * table.value(a + 1) / m ** (a + 1)
        total += b_next / a * math.comb(order - 1, a)
    value = -math.log(m) + harmonic_number(order - 1) - m * total
    return EntropyEstimate(
        value=value,
        method="taylor",
        params={
            "order": order,
            "scale": m,
            "beta": params.beta,
            "policy": params.policy,
        },
        certified_lower_bound=params.certified,
    )


def taylor_sweep(
    mix: GaussianMixture,
    orders,
    betas,
    mode: ModeResult | None = None,
    table: PowerIntegralTable | None = None,
) -> list[EntropyEstimate]:
    """Evaluate the estimator on the (beta, order) grid.

    The density maximum and the power-integral table are computed once
    and shared by every grid point.  Rows come out in sweep order: betas
    outer, orders inner.
    """
    orders = list(orders)
    betas = list(betas)
    if mode is None:
        mode = find_mode(mix)
    if table is None:
        table = build_table(mix, max(orders))
    out = []
    for beta in betas:
        for order in orders:
            params = params_from_beta(mode, order, beta)
            out.append(taylor_entropy(mix, table, params))
    return out
