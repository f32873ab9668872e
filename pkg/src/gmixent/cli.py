"""Command-line driver: estimators, sweeps and oracles over mixture configs.

Exit codes: 0 on success, 2 for config problems (bad file, unknown preset,
bad arguments), 3 for numerical domain errors (an estimator refused its
parameters, an oracle does not support the dimension, a term budget was
exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .config import load_mixture_file, mixture_hash
from .errors import (
    ConfigError,
    ConvergenceError,
    NumericalDomainError,
    ResourceLimitError,
    UnsupportedDimensionError,
)
from .estimates import EntropyEstimate
from .mixture import GaussianMixture, find_mode
from .oracle import grid_entropy, mc_entropy
from .polyfit import PolyfitParams, eval_fit_curve, fit_coefficients, polyfit_entropy
from .power_integrals import build_table
from .presets import load_preset, preset_names
from .reporting import (
    CSV_COLUMNS,
    FIT_CURVE_COLUMNS,
    TABLE_COLUMNS,
    estimate_row,
    format_field,
    write_csv,
)
from .bounds import component_upper_bound, moment_upper_bound
from .taylor import params_from_beta, params_sum_of_peaks, taylor_entropy

DEFAULT_ORACLE_SAMPLES = 10_000_000
DEFAULT_SEED = 12345
DEFAULT_CACHE = ".gmixent_oracle_cache.json"

ESTIMATE_METHODS = ("polyfit", "taylor", "moment_bound", "component_bound", "mc", "grid")


def _parse_int_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",")]


def _parse_float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",")]


def _resolve_mixtures(args) -> list[tuple[str, GaussianMixture]]:
    out = []
    if getattr(args, "preset", None):
        for name in args.preset.split(","):
            out.append((name, load_preset(name.strip())))
    for path in getattr(args, "config", None) or []:
        out.append((Path(path).stem, load_mixture_file(path)))
    if not out:
        raise ConfigError("no mixture given; use --preset or --config")
    return out


def _arithmetic(args) -> tuple[str, bool]:
    mode = getattr(args, "arithmetic", "log")
    if mode == "linear-kahan":
        return "linear", True
    return mode, False


class _OracleCache:
    def __init__(self, path: Path | None):
        self.path = path
        self.data = {}
        if path is not None and path.exists():
            self.data = json.loads(path.read_text())

    def get(self, key: str) -> EntropyEstimate | None:
        hit = self.data.get(key)
        if hit is None:
            return None
        return EntropyEstimate(
            value=hit["value"],
            method=hit["method"],
            params=hit["params"],
            std_error=hit.get("std_error"),
        )

    def put(self, key: str, est: EntropyEstimate) -> None:
        self.data[key] = {
            "value": est.value,
            "method": est.method,
            "params": est.params,
            "std_error": est.std_error,
        }
        if self.path is not None:
            self.path.write_text(json.dumps(self.data, indent=1, sort_keys=True))


def _open_cache(args) -> _OracleCache:
    if getattr(args, "no_cache", False):
        return _OracleCache(None)
    return _OracleCache(Path(getattr(args, "cache", None) or DEFAULT_CACHE))


def _oracle_estimate(mix, method: str, args, cache: _OracleCache) -> EntropyEstimate:
    if method == "grid":
        if mix.dimension > 2:
            raise UnsupportedDimensionError(
                f"grid oracle supports n <= 2, mixture has n = {mix.dimension}"
            )
        key = f"{mixture_hash(mix)}|grid|{2001}"
        hit = cache.get(key)
        if hit is None:
            hit = grid_entropy(mix)
            cache.put(key, hit)
        return hit
    key = f"{mixture_hash(mix)}|mc|{args.oracle_n}|{args.seed}"
    hit = cache.get(key)
    if hit is None:
        hit = mc_entropy(mix, args.oracle_n, args.seed)
        cache.put(key, hit)
    return hit


def _auto_oracle(mix, args, cache: _OracleCache) -> EntropyEstimate:
    choice = getattr(args, "oracle", "auto")
    method = choice if choice in ("mc", "grid") else ("grid" if mix.dimension <= 2 else "mc")
    return _oracle_estimate(mix, method, args, cache)


def _named(label: str, fn):
    """Run an estimator, prefixing numerical failures with its identity."""
    try:
        return fn()
    except (NumericalDomainError, ResourceLimitError, ConvergenceError) as exc:
        exc.args = (f"{label}: {exc}",)
        raise


def _timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, (time.perf_counter() - start) * 1000.0


def _estimate_one(
    mixture_id: str,
    mix: GaussianMixture,
    method: str,
    args,
    cache: _OracleCache,
    mode_and_table=None,
) -> tuple[EntropyEstimate, float]:
    arithmetic, compensated = _arithmetic(args)
    if method in ("polyfit", "taylor"):
        if mode_and_table is None:
            mode = find_mode(mix)
            table = build_table(mix, args.C, arithmetic, compensated)
        else:
            mode, table = mode_and_table
        if method == "polyfit":
            label = f"polyfit (mixture={mixture_id}, C={args.C}, r={args.r})"
            return _timed(
                lambda: _named(
                    label, lambda: polyfit_entropy(mix, table, args.C, args.r, mode)
                )
            )
        if args.m_policy == "sum_of_peaks":
            params = params_sum_of_peaks(mix, mode, args.C)
        else:
            params = _named(
                f"taylor (mixture={mixture_id}, C={args.C}, beta={args.beta})",
                lambda: params_from_beta(mode, args.C, args.beta),
            )
        label = f"taylor (mixture={mixture_id}, C={args.C}, m={params.scale:.6g})"
        return _timed(lambda: _named(label, lambda: taylor_entropy(mix, table, params)))
    if method == "moment_bound":
        est, ms = _timed(lambda: moment_upper_bound(mix))
        return EntropyEstimate(value=est, method="moment_bound"), ms
    if method == "component_bound":
        est, ms = _timed(lambda: component_upper_bound(mix))
        return EntropyEstimate(value=est, method="component_bound"), ms
    if method in ("mc", "grid"):
        label = f"{method} oracle (mixture={mixture_id})"
        return _timed(
            lambda: _named(label, lambda: _oracle_estimate(mix, method, args, cache))
        )
    raise ConfigError(f"unknown method {method!r}")


def _wants_pct(method: str, args) -> bool:
    policy = getattr(args, "pct", "auto")
    if getattr(args, "oracle", "auto") == "none":
        if policy == "on":
            raise ConfigError("--pct on conflicts with --oracle none")
        return False
    if policy == "on":
        return True
    if policy == "off":
        return False
    return method in ("polyfit", "taylor")


def _emit(args, rows, columns=CSV_COLUMNS) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", newline="") as fh:
            write_csv(fh, rows, columns)
    else:
        write_csv(sys.stdout, rows, columns)


def cmd_estimate(args) -> int:
    cache = _open_cache(args)
    rows = []
    for mixture_id, mix in _resolve_mixtures(args):
        oracle_est = None
        if _wants_pct(args.method, args) and args.method not in ("mc", "grid"):
            oracle_est = _named(
                f"oracle (mixture={mixture_id})",
                lambda: _auto_oracle(mix, args, cache),
            )
        est, ms = _estimate_one(mixture_id, mix, args.method, args, cache)
        rows.append(
            estimate_row(
                mixture_id,
                est,
                oracle=oracle_est,
                runtime_ms=ms if args.timings else None,
                in_bits=args.bits,
            )
        )
    _emit(args, rows)
    return 0


def cmd_sweep(args) -> int:
    if args.fit_curve:
        return _cmd_fit_curve(args)
    if not args.method:
        raise ConfigError("sweep needs --method polyfit or taylor (or --fit-curve)")
    orders = _parse_int_range(args.C)
    arithmetic, compensated = _arithmetic(args)
    cache = _open_cache(args)
    rows = []
    for mixture_id, mix in _resolve_mixtures(args):
        mode = find_mode(mix)
        table = build_table(mix, max(orders), arithmetic, compensated)
        oracle_est = None
        if _wants_pct(args.method, args):
            oracle_est = _named(
                f"oracle (mixture={mixture_id})",
                lambda: _auto_oracle(mix, args, cache),
            )
        if args.method == "polyfit":
            outer = _parse_float_list(args.r)
        else:
            outer = _parse_float_list(args.beta)
        for value in outer:
            for order in orders:
                local = argparse.Namespace(**vars(args))
                local.C = order
                if args.method == "polyfit":
                    local.r = value
                else:
                    local.beta = value
                est, ms = _estimate_one(
                    mixture_id, mix, args.method, local, cache, (mode, table)
                )
                rows.append(
                    estimate_row(
                        mixture_id,
                        est,
                        oracle=oracle_est,
                        runtime_ms=ms if args.timings else None,
                        in_bits=args.bits,
                    )
                )
    _emit(args, rows)
    return 0


def _cmd_fit_curve(args) -> int:
    order = int(args.C) if ".." not in str(args.C) and "," not in str(args.C) else None
    if order is None:
        raise ConfigError("--fit-curve takes a single --C value")
    rows = []
    import numpy as np

    b = args.b
    points = args.points
    s_grid = b * np.arange(1, points + 1) / points
    target = -s_grid * np.log(s_grid)
    for r in _parse_float_list(args.r):
        params = _named(
            f"polyfit fit-curve (C={order}, r={r}, b={b})",
            lambda: PolyfitParams(order=order, weight_exponent=r, interval_end=b),
        )
        curve = _named(
            f"polyfit fit-curve (C={order}, r={r}, b={b})",
            lambda: eval_fit_curve(params, s_grid, fit_coefficients(params)),
        )
        for s, g, t in zip(s_grid, curve, target):
            rows.append(
                {
                    "r": format_field(float(r)),
                    "C": format_field(order),
                    "b": format_field(float(b)),
                    "s": format_field(float(s)),
                    "poly_value": format_field(float(g)),
                    "target_value": format_field(float(t)),
                }
            )
    _emit(args, rows, FIT_CURVE_COLUMNS)
    return 0


def cmd_oracle(args) -> int:
    cache = _open_cache(args)
    rows = []
    for mixture_id, mix in _resolve_mixtures(args):
        est, ms = _estimate_one(mixture_id, mix, args.method, args, cache)
        rows.append(
            estimate_row(
                mixture_id,
                est,
                runtime_ms=ms if args.timings else None,
                in_bits=args.bits,
            )
        )
    _emit(args, rows)
    return 0


def cmd_table(args) -> int:
    arithmetic, compensated = _arithmetic(args)
    rows = []
    for mixture_id, mix in _resolve_mixtures(args):
        table = _named(
            f"power integrals (mixture={mixture_id}, C_max={args.C_max})",
            lambda: build_table(mix, args.C_max, arithmetic, compensated),
        )
        for a in range(1, table.max_order + 1):
            rows.append(
                {
                    "mixture_id": mixture_id,
                    "a": str(a),
                    "integral_value": format_field(table.value(a)),
                }
            )
    _emit(args, rows, TABLE_COLUMNS)
    return 0


def _add_mixture_options(sub) -> None:
    sub.add_argument("--preset", help=f"comma-separated preset names ({', '.join(preset_names())})")
    sub.add_argument("--config", action="append", help="mixture config file (repeatable)")


def _add_common_options(sub) -> None:
    sub.add_argument("--out", help="output CSV path (default: stdout)")
    sub.add_argument("--oracle", choices=["auto", "mc", "grid", "none"], default="auto",
                     help="oracle for percentage errors (auto: grid if n<=2 else mc)")
    sub.add_argument("--oracle-n", type=int, default=DEFAULT_ORACLE_SAMPLES,
                     dest="oracle_n", help="Monte Carlo sample count")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Monte Carlo seed")
    sub.add_argument("--cache", help=f"oracle cache file (default {DEFAULT_CACHE})")
    sub.add_argument("--no-cache", action="store_true", dest="no_cache",
                     help="disable the oracle cache")
    sub.add_argument("--bits", action="store_true",
                     help="report entropies in bits instead of nats")
    sub.add_argument("--timings", action="store_true",
                     help="fill the runtime_ms column (off by default so reruns are byte-identical)")
    sub.add_argument("--arithmetic", choices=["log", "linear", "linear-kahan"],
                     default="log", help="power-integral accumulation mode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmixent",
        description="Entropy estimators, bounds and oracles for Gaussian mixtures.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    est = subs.add_parser("estimate", help="one estimator evaluation per mixture")
    _add_mixture_options(est)
    est.add_argument("--method", choices=ESTIMATE_METHODS, required=True)
    est.add_argument("--C", type=int, default=5, help="polynomial order")
    est.add_argument("--r", type=float, default=-2.0, help="weight exponent")
    est.add_argument("--beta", type=float, default=1.0, help="Taylor scale factor")
    est.add_argument("--m-policy", choices=["beta", "sum_of_peaks"], default="beta",
                     dest="m_policy", help="Taylor scale policy")
    est.add_argument("--pct", choices=["auto", "on", "off"], default="auto",
                     help="compute percentage error vs oracle (auto: estimators only)")
    _add_common_options(est)
    est.set_defaults(func=cmd_estimate)

    swp = subs.add_parser("sweep", help="grid evaluation over orders and parameters")
    _add_mixture_options(swp)
    swp.add_argument("--method", choices=["polyfit", "taylor"])
    swp.add_argument("--C", default="2..8", help="order range, e.g. 2..8 or 3,5,7")
    swp.add_argument("--r", default="-2", help="comma-separated weight exponents")
    swp.add_argument("--beta", default="1", help="comma-separated Taylor scale factors")
    swp.add_argument("--m-policy", choices=["beta", "sum_of_peaks"], default="beta",
                     dest="m_policy")
    swp.add_argument("--pct", choices=["auto", "on", "off"], default="auto")
    swp.add_argument("--fit-curve", action="store_true", dest="fit_curve",
                     help="emit fitted-polynomial samples instead of entropies")
    swp.add_argument("--b", type=float, default=2.0, help="fit interval end for --fit-curve")
    swp.add_argument("--points", type=int, default=400, help="samples for --fit-curve")
    _add_common_options(swp)
    swp.set_defaults(func=cmd_sweep)

    orc = subs.add_parser("oracle", help="reference entropy values")
    _add_mixture_options(orc)
    orc.add_argument("--method", choices=["mc", "grid"], required=True)
    _add_common_options(orc)
    orc.set_defaults(func=cmd_oracle)

    tab = subs.add_parser("table", help="export power integrals for audit")
    _add_mixture_options(tab)
    tab.add_argument("--C-max", type=int, default=8, dest="C_max")
    _add_common_options(tab)
    tab.set_defaults(func=cmd_table)

    return parser


# options whose values may start with a minus sign (negative numbers and
# comma lists of them), which argparse would otherwise read as flags
_NUMERIC_OPTIONS = {"--r", "--beta", "--C", "--b", "--seed"}


def _merge_negative_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if (
            tok in _NUMERIC_OPTIONS
            and nxt.startswith("-")
            and len(nxt) > 1
            and (nxt[1].isdigit() or nxt[1] == ".")
        ):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_negative_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"gmixent: config error: {exc}", file=sys.stderr)
        return 2
    except (NumericalDomainError, ResourceLimitError, ConvergenceError) as exc:
        print(f"gmixent: numerical error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        # malformed ranges/lists/seeds surface here
        print(f"gmixent: invalid arguments: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
