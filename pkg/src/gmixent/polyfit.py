"""Weighted least-squares polynomial fit of -s ln s and the entropy estimator.

Fitting -s ln s on (0, b] with weight s^r reduces, after rescaling the
interval to (0, 1], to a linear system whose matrix has entries
1/(i+j+r+1): a Hilbert-like matrix, notoriously ill-conditioned.  The
solver therefore never touches floating point while solving: rational
weight exponents (which cover every value of practical interest) go
through exact Fraction elimination, everything else through 50-digit
arithmetic.  Only the final solution is rounded to doubles.

The entropy estimate is then a dot product of the rescaled coefficients
with the cached power integrals of the mixture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import NumericalDomainError
from .estimates import EntropyEstimate
from .mixture import GaussianMixture, ModeResult, find_mode, log_density
from .power_integrals import PowerIntegralTable, build_table

# Orders beyond this make the moment matrix too ill-conditioned to trust
# even with careful solving, and buy no accuracy for the entropy use case.
MAX_ORDER = 12

MIN_WEIGHT_EXPONENT = -3.0  # integrability of the weighted error near 0

_EXTENDED_DPS = 50
_MAX_EXACT_DENOMINATOR = 64

SOLVE_EXACT = "exact_rational"
SOLVE_EXTENDED = "extended_precision"


@dataclass(frozen=True)
class PolyfitParams:
    """Order, weight exponent r and fit-interval endpoint b."""

    order: int
    weight_exponent: float
    interval_end: float

    def __post_init__(self):
        if not 1 <= self.order <= MAX_ORDER:
            raise NumericalDomainError(
                f"order must be in 1..{MAX_ORDER}, got {self.order}"
            )
        if self.weight_exponent <= MIN_WEIGHT_EXPONENT:
            raise NumericalDomainError(
                f"weight exponent must be > {MIN_WEIGHT_EXPONENT}, "
                f"got {self.weight_exponent}"
            )
        if not self.interval_end > 0.0:
            raise NumericalDomainError("interval end must be positive")


@dataclass(frozen=True)
class RescaledSystem:
    """The unit-interval normal equations and their solution.

    matrix[i-1, j-1] = 1/(i+j+r+1) and rhs[i-1] = 1/(i+r+2)^2 for
    i, j = 1..order; both are independent of the fit interval's endpoint.
    """

    matrix: np.ndarray
    rhs: np.ndarray
    solution: np.ndarray
    solve_mode: str
    residual: float
    condition_estimate: float


def _small_fraction(x: float) -> Fraction | None:
    """Exact small-denominator rational value of x, or None."""
    exact = Fraction(x)
    small = exact.limit_denominator(_MAX_EXACT_DENOMINATOR)
    return small if small == exact else None


def _solve_fractions(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination with partial pivoting, entirely in rationals."""
    size = len(rhs)
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(size):
        pivot_row = max(range(col, size), key=lambda r: abs(aug[r][col]))
        if aug[pivot_row][col] == 0:
            raise RuntimeError("moment matrix is singular, which cannot happen")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        for r in range(col + 1, size):
            factor = aug[r][col] / aug[col][col]
            if factor:
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    solution = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        acc = aug[i][size] - sum(aug[i][j] * solution[j] for j in range(i + 1, size))
        solution[i] = acc / aug[i][i]
    return solution


def build_rescaled_system(order: int, weight_exponent: float) -> RescaledSystem:
    """Assemble and solve the unit-interval system for (order, r).

    Rational r with denominator <= 64 is solved exactly (zero residual by
    construction); anything else uses 50-digit arithmetic and verifies the
    residual against 1e-12 of the right-hand side.
    """
    if order < 1:
        raise NumericalDomainError("order must be >= 1")
    if order > MAX_ORDER:
        raise NumericalDomainError(
            f"order {order} refused: the moment matrix is numerically "
            f"unreliable beyond {MAX_ORDER}"
        )
    if weight_exponent <= MIN_WEIGHT_EXPONENT:
        raise NumericalDomainError(
            f"weight exponent must be > {MIN_WEIGHT_EXPONENT}"
        )

    idx = np.arange(1, order + 1, dtype=float)
    matrix = 1.0 / (idx[:, None] + idx[None, :] + weight_exponent + 1.0)
    rhs = 1.0 / (idx + weight_exponent + 2.0) ** 2
    with np.errstate(over="ignore", divide="ignore"):
        condition = float(np.linalg.cond(matrix))

    r_exact = _small_fraction(weight_exponent)
    if r_exact is not None:
        fr_matrix = [
            [Fraction(1, 1) / (i + j + r_exact + 1) for j in range(1, order + 1)]
            for i in range(1, order + 1)
        ]
        fr_rhs = [Fraction(1, 1) / (i + r_exact + 2) ** 2 for i in range(1, order + 1)]
        fr_solution = _solve_fractions(fr_matrix, fr_rhs)
        residuals = [
            sum(fr_matrix[i][j] * fr_solution[j] for j in range(order)) - fr_rhs[i]
            for i in range(order)
        ]
        if any(residuals):
            raise RuntimeError("exact solve left a nonzero residual")
        solution = np.array([float(x) for x in fr_solution])
        return RescaledSystem(
            matrix=matrix,
            rhs=rhs,
            solution=solution,
            solve_mode=SOLVE_EXACT,
            residual=0.0,
            condition_estimate=condition,
        )

    with mpmath.workdps(_EXTENDED_DPS):
        r_mp = mpmath.mpf(weight_exponent)
        mp_matrix = mpmath.matrix(
            [
                [1 / (i + j + r_mp + 1) for j in range(1, order + 1)]
                for i in range(1, order + 1)
            ]
        )
        mp_rhs = mpmath.matrix([1 / (i + r_mp + 2) ** 2 for i in range(1, order + 1)])
        mp_solution = mpmath.lu_solve(mp_matrix, mp_rhs)
        mp_residual = mp_matrix * mp_solution - mp_rhs
        residual = float(max(abs(v) for v in mp_residual))
        rhs_scale = float(max(abs(v) for v in mp_rhs))
    if residual > 1e-12 * rhs_scale:
        raise RuntimeError(
            f"extended-precision solve residual {residual:.3g} exceeds tolerance"
        )
    solution = np.array([float(v) for v in mp_solution])
    return RescaledSystem(
        matrix=matrix,
        rhs=rhs,
        solution=solution,
        solve_mode=SOLVE_EXTENDED,
        residual=residual,
        condition_estimate=condition,
    )


def hilbert_inverse(order: int) -> list[list[int]]:
    """Exact integer inverse of the order x order Hilbert matrix.

    (H^-1)_ij = (-1)^(i+j) (i+j-1) C(n+i-1, n-j) C(n+j-1, n-i) C(i+j-2, i-1)^2.
    Returned as Python ints, so no entry is rounded.
    """
    out = []
    for i in range(1, order + 1):
        row = []
        for j in range(1, order + 1):
            value = (
                (-1) ** (i + j)
                * (i + j - 1)
                * math.comb(order + i - 1, order - j)
                * math.comb(order + j - 1, order - i)
                * math.comb(i + j - 2, i - 1) ** 2
            )
            row.append(value)
        out.append(row)
    return out


@dataclass(frozen=True)
class PolyCoefficients:
    """Coefficients c_1..c_C of a polynomial approximation of -s ln s."""

    coeffs: np.ndarray
    method: str
    params: PolyfitParams
    solve_mode: str | None = None
    condition_estimate: float | None = None


def fit_coefficients(params: PolyfitParams, system: RescaledSystem | None = None) -> PolyCoefficients:
    """Map the unit-interval solution onto the actual interval (0, b].

    c_1 = d_1 - ln b and c_a = b^(1-a) d_a for a >= 2, where d is the
    endpoint-independent solution of the rescaled system.
    """
    if system is None:
        system = build_rescaled_system(params.order, params.weight_exponent)
    b = params.interval_end
    d = system.solution
    coeffs = np.empty_like(d)
    coeffs[0] = d[0] - math.log(b)
    for a in range(2, params.order + 1):
        coeffs[a - 1] = b ** (1 - a) * d[a - 1]
    return PolyCoefficients(
        coeffs=coeffs,
        method="polyfit",
        params=params,
        solve_mode=system.solve_mode,
        condition_estimate=system.condition_estimate,
    )


def eval_fit_curve(params: PolyfitParams, s_grid, coefficients: PolyCoefficients | None = None) -> np.ndarray:
    """Evaluate the fitted polynomial on points of (0, b].

    Points outside the fit interval are refused: the fit says nothing
    about the polynomial's behavior there.
    """
    s = np.asarray(s_grid, dtype=float)
    if np.any(s <= 0.0) or np.any(s > params.interval_end * (1.0 + 1e-12)):
        raise NumericalDomainError(
            f"fit-curve points must lie in (0, {params.interval_end:.6g}]"
        )
    if coefficients is None:
        coefficients = fit_coefficients(params)
    # Horner on s * (c1 + s * (c2 + ...)); the constant term is zero.
    acc = np.zeros_like(s)
    for c in coefficients.coeffs[::-1]:
        acc = acc * s + c
    return acc * s


def polyfit_entropy(
    mix: GaussianMixture,
    table: PowerIntegralTable,
    order: int,
    weight_exponent: float,
    mode: ModeResult,
) -> EntropyEstimate:
    """Entropy estimate: fitted coefficients dotted with the power integrals.

    The fit interval ends at the mixture's density maximum, taken from the
    caller's ModeResult.  A peak below the density at some component mean
    is rejected as inconsistent (it would silently extrapolate the fit).
    """
    if not table.covers(order):
        raise ValueError(f"table covers orders up to {table.max_order}, need {order}")
    b = mode.peak_density
    mean_density_floor = max(
        math.exp(log_density(mix, c.mean)) for c in mix.components
    )
    if b < mean_density_floor * (1.0 - 1e-9):
        raise NumericalDomainError(
            f"interval end {b:.6g} is below the mixture density "
            f"{mean_density_floor:.6g} at a component mean; "
            "the supplied mode result does not belong to this mixture"
        )
    params = PolyfitParams(order=order, weight_exponent=weight_exponent, interval_end=b)
    fitted = fit_coefficients(params)
    value = float(fitted.coeffs @ table.values[:order])
    return EntropyEstimate(
        value=value,
        method="polyfit",
        params={
            "order": order,
            "weight_exponent": weight_exponent,
            "interval_end": b,
            "solve_mode": fitted.solve_mode,
            "condition_estimate": fitted.condition_estimate,
        },
    )


def polyfit_sweep(
    mix: GaussianMixture,
    orders,
    weight_exponents,
    mode: ModeResult | None = None,
    table: PowerIntegralTable | None = None,
) -> list[EntropyEstimate]:
    """Evaluate the estimator on the (r, order) grid.

    One mode search and one power-integral table serve the whole grid.
    Rows come out in sweep order: weight exponents outer, orders inner.
    """
    orders = list(orders)
    weight_exponents = list(weight_exponents)
    if mode is None:
        mode = find_mode(mix)
    if table is None:
        table = build_table(mix, max(orders))
    out = []
    for r in weight_exponents:
        for order in orders:
            out.append(polyfit_entropy(mix, table, order, r, mode))
    return out
