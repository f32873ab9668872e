"""Common result record for every entropy estimator, bound and oracle."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class EntropyEstimate:
    """An entropy value in nats together with how it was obtained.

    ``params`` holds the method parameters (order, weight exponent, scale,
    sample count, ...) under stable keys so reports can be regenerated.
    ``std_error`` is the statistical (or discretization) error estimate of
    the oracles; closed-form estimators leave it ``None``.
    """

    value: float
    method: str
    params: dict = field(default_factory=dict)
    std_error: float | None = None
    certified_lower_bound: bool | None = None
