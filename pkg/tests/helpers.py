"""Independent oracles used to pin expected values.

Everything in this module deliberately avoids the library's evaluation
paths: densities are computed with explicit inverses and determinants,
integrals with generic quadrature, and coefficient identities with exact
rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
from scipy.integrate import simpson


def naive_density(mix, points: np.ndarray) -> np.ndarray:
    """Direct sum of component normal densities (explicit inverse/det)."""
    pts = np.atleast_2d(points)
    total = np.zeros(len(pts))
    n = mix.dimension
    for p, comp in zip(mix.weights, mix.components):
        inv = np.linalg.inv(comp.covariance)
        det = np.linalg.det(comp.covariance)
        diff = pts - comp.mean
        quad = np.einsum("ij,jk,ik->i", diff, inv, diff)
        total += p * (2 * math.pi) ** (-n / 2) * det**-0.5 * np.exp(-0.5 * quad)
    return total


def axis_box(mix, pad_sigmas: float = 8.0):
    """Per-axis integration bounds: component means padded by sigmas."""
    spread = pad_sigmas * math.sqrt(
        max(float(np.linalg.eigvalsh(c.covariance).max()) for c in mix.components)
    )
    lows, highs = [], []
    for axis in range(mix.dimension):
        lows.append(min(c.mean[axis] for c in mix.components) - spread)
        highs.append(max(c.mean[axis] for c in mix.components) + spread)
    return lows, highs


def quad_power_integral(mix, a: int, nodes: int = 2401) -> float:
    """Tensor-grid Simpson quadrature of f^a for n <= 2, from naive_density."""
    lows, highs = axis_box(mix)
    if mix.dimension == 1:
        xs = np.linspace(lows[0], highs[0], nodes)
        f = naive_density(mix, xs[:, None])
        return float(simpson(f**a, x=xs))
    assert mix.dimension == 2
    xs = np.linspace(lows[0], highs[0], nodes)
    ys = np.linspace(lows[1], highs[1], nodes)
    rows = np.empty(nodes)
    block = 128
    for start in range(0, nodes, block):
        stop = min(start + block, nodes)
        gx, gy = np.meshgrid(xs[start:stop], ys, indexing="ij")
        f = naive_density(mix, np.column_stack([gx.ravel(), gy.ravel()]))
        rows[start:stop] = simpson(f.reshape(stop - start, nodes) ** a, x=ys, axis=1)
    return float(simpson(rows, x=xs))


def series_coefficients_exact(order: int, scale) -> list[Fraction]:
    """Coefficients of f * sum_{k=1}^{order-1} (1/k) (1 - f/m)^k in powers of f.

    Pure binomial expansion in exact rationals: the polynomial is
    sum_k (1/k) sum_b C(k,b) (-1/m)^b f^(b+1).
    """
    m = Fraction(scale)
    coeffs = [Fraction(0)] * order
    for k in range(1, order):
        for b in range(0, k + 1):
            coeffs[b] += Fraction(1, k) * math.comb(k, b) * (-1) ** b / m**b
    return coeffs


def solve_fractions(matrix, rhs):
    """Independent exact linear solve (Cramer-free Gaussian elimination)."""
    size = len(rhs)
    aug = [list(map(Fraction, row)) + [Fraction(col)] for row, col in zip(matrix, rhs)]
    for i in range(size):
        pivot = next(r for r in range(i, size) if aug[r][i] != 0)
        aug[i], aug[pivot] = aug[pivot], aug[i]
        for r in range(size):
            if r != i and aug[r][i] != 0:
                factor = aug[r][i] / aug[i][i]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[i])]
    return [aug[i][size] / aug[i][i] for i in range(size)]


def direct_interval_solution(order: int, r: float, b: float) -> list[float]:
    """Solve the weighted fit of -s ln s on (0, b] without interval rescaling.

    Moment matrix and right-hand side from the closed-form integrals of
    s^(i+j+r) and -s^(i+r+1) ln s over (0, b], solved at 60 digits; the
    result is mapped back to the unit-interval convention so it can be
    compared against the rescaled solver.
    """
    with mpmath.workdps(60):
        bb = mpmath.mpf(b)
        rr = mpmath.mpf(r)
        matrix = mpmath.matrix(
            [
                [bb ** (i + j + rr + 1) / (i + j + rr + 1) for j in range(1, order + 1)]
                for i in range(1, order + 1)
            ]
        )
        rhs = mpmath.matrix(
            [
                bb ** (i + rr + 2)
                * (1 - (i + rr + 2) * mpmath.log(bb))
                / (i + rr + 2) ** 2
                for i in range(1, order + 1)
            ]
        )
        d = mpmath.lu_solve(matrix, rhs)
        unit = [d[0] + mpmath.log(bb)]
        unit += [bb ** (i - 1) * d[i - 1] for i in range(2, order + 1)]
        return [float(v) for v in unit]


def weighted_fit_error(coeffs, r: float, b: float) -> float:
    """Weighted squared fit error of the polynomial against -s ln s on (0, b]."""
    from scipy.integrate import quad

    def integrand(s):
        poly = 0.0
        for c in reversed(coeffs):
            poly = poly * s + c
        poly *= s
        return s**r * (-s * math.log(s) - poly) ** 2

    value, _ = quad(integrand, 0.0, b, limit=400)
    return value / b
