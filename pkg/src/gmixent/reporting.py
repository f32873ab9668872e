"""CSV schema shared by the CLI and downstream plotting tools.

The column set is fixed; fields a method does not produce stay empty
rather than being dropped.  Floats are rendered with 17 significant
digits so reruns with identical inputs produce byte-identical files.
"""

from __future__ import annotations

import math

from .estimates import EntropyEstimate

CSV_COLUMNS = [
    "mixture_id",
    "method",
    "C",
    "r",
    "beta",
    "m",
    "b",
    "h_est",
    "std_error",
    "pct_error_vs_oracle",
    "certified_lower_bound",
    "solve_mode",
    "condition_estimate",
    "runtime_ms",
]

FIT_CURVE_COLUMNS = ["r", "C", "b", "s", "poly_value", "target_value"]

TABLE_COLUMNS = ["mixture_id", "a", "integral_value"]


def format_field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def pct_error(oracle_value: float, estimate_value: float) -> float:
    """Signed percentage error (oracle - estimate) / oracle * 100."""
    return (oracle_value - estimate_value) / oracle_value * 100.0


def estimate_row(
    mixture_id: str,
    estimate: EntropyEstimate,
    oracle: EntropyEstimate | None = None,
    runtime_ms: float | None = None,
    in_bits: bool = False,
) -> dict[str, str]:
    """One schema row for an estimate, with the oracle comparison if given."""
    p = estimate.params
    scale = 1.0 / math.log(2.0) if in_bits else 1.0
    row = {
        "mixture_id": mixture_id,
        "method": estimate.method,
        "C": p.get("order"),
        "r": p.get("weight_exponent"),
        "beta": p.get("beta"),
        "m": p.get("scale"),
        "b": p.get("interval_end"),
        "h_est": estimate.value * scale,
        "std_error": None if estimate.std_error is None else estimate.std_error * scale,
        "pct_error_vs_oracle": None,
        "certified_lower_bound": estimate.certified_lower_bound,
        "solve_mode": p.get("solve_mode"),
        "condition_estimate": p.get("condition_estimate"),
        "runtime_ms": runtime_ms,
    }
    if oracle is not None:
        row["pct_error_vs_oracle"] = pct_error(oracle.value, estimate.value)
    return {key: format_field(row[key]) for key in CSV_COLUMNS}


def write_csv(stream, rows, columns=CSV_COLUMNS) -> None:
    """Write header and rows with fixed column order and '\\n' newlines."""
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(row.get(col, "") for col in columns) + "\n")
