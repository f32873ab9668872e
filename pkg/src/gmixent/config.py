"""Mixture config files and canonical mixture identities.

A config is a JSON document with three fields::

    {
      "dimension": 2,
      "weights": [0.2, 0.8],
      "components": [
        {"mean": [0.0, 0.0], "covariance": [[1.0, 0.0], [0.0, 1.0]]},
        {"mean": [1.0, 1.0], "covariance": [[1.0, 0.2], [0.2, 1.0]]}
      ]
    }

Covariances are row-major lists of lists.  Violations of the mixture
invariants are rejected with the line of the offending field in the
message.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .mixture import GaussianComponent, GaussianMixture


def _line_of(text: str, key: str, occurrence: int = 0) -> int | None:
    """1-based line of the n-th occurrence of a quoted key, if present."""
    needle = f'"{key}"'
    pos = -1
    for _ in range(occurrence + 1):
        pos = text.find(needle, pos + 1)
        if pos < 0:
            return None
    return text.count("\n", 0, pos) + 1


def load_mixture_file(path) -> GaussianMixture:
    """Parse and validate a mixture config file.

    Raises ConfigError with a line-anchored message on any violation:
    malformed JSON, missing fields, weights that are not positive or do
    not sum to 1, dimension mismatches, or covariances that are not
    symmetric positive definite.
    """
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return parse_mixture_config(doc, text=text)


def parse_mixture_config(doc, text: str = "") -> GaussianMixture:
    """Validate an already-parsed config document (see load_mixture_file)."""
    if not isinstance(doc, dict):
        raise ConfigError("top-level value must be an object", line=1)
    for key in ("dimension", "weights", "components"):
        if key not in doc:
            raise ConfigError(f"missing required field '{key}'", line=1)

    dim = doc["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ConfigError(
            "'dimension' must be a positive integer", line=_line_of(text, "dimension")
        )

    weights = doc["weights"]
    wline = _line_of(text, "weights")
    if not isinstance(weights, list) or not weights:
        raise ConfigError("'weights' must be a non-empty list", line=wline)
    try:
        warr = np.array(weights, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError("'weights' entries must be numbers", line=wline) from None
    if warr.ndim != 1:
        raise ConfigError("'weights' must be a flat list", line=wline)
    if np.any(warr <= 0.0):
        raise ConfigError("all weights must be > 0", line=wline)
    if abs(float(warr.sum()) - 1.0) > 1e-12:
        raise ConfigError(
            f"weights sum to {warr.sum():.17g}, expected 1 within 1e-12", line=wline
        )

    comps_doc = doc["components"]
    cline = _line_of(text, "components")
    if not isinstance(comps_doc, list) or not comps_doc:
        raise ConfigError("'components' must be a non-empty list", line=cline)
    if len(comps_doc) != len(weights):
        raise ConfigError(
            f"{len(weights)} weights given for {len(comps_doc)} components",
            line=cline,
        )

    components = []
    for i, entry in enumerate(comps_doc):
        mline = _line_of(text, "mean", i)
        kline = _line_of(text, "covariance", i)
        if not isinstance(entry, dict) or "mean" not in entry or "covariance" not in entry:
            raise ConfigError(
                f"component {i} must be an object with 'mean' and 'covariance'",
                line=cline,
            )
        mean = np.asarray(entry["mean"], dtype=float)
        if mean.ndim != 1 or mean.shape[0] != dim:
            raise ConfigError(
                f"component {i} mean must be a list of length {dim}", line=mline
            )
        cov = np.asarray(entry["covariance"], dtype=float)
        if cov.shape != (dim, dim):
            raise ConfigError(
                f"component {i} covariance must be a {dim}x{dim} row-major "
                "list of lists",
                line=kline,
            )
        try:
            components.append(GaussianComponent(mean, cov))
        except ValueError as exc:
            raise ConfigError(f"component {i}: {exc}", line=kline) from None

    try:
        return GaussianMixture(weights, components)
    except ValueError as exc:
        raise ConfigError(str(exc), line=wline) from None


def canonical_text(mix: GaussianMixture) -> str:
    """Canonical rendering of a mixture: components sorted with their weights,
    every number printed with 17 significant digits."""
    rows = []
    for p, comp in zip(mix.weights, mix.components):
        mean = ",".join(format(v, ".17g") for v in comp.mean)
        cov = ";".join(
            ",".join(format(v, ".17g") for v in row) for row in comp.covariance
        )
        rows.append(f"w={p:.17g} mean=[{mean}] cov=[{cov}]")
    rows.sort()
    return f"dim={mix.dimension}\n" + "\n".join(rows) + "\n"


def mixture_hash(mix: GaussianMixture) -> str:
    """Short stable identity for caching: component order does not matter."""
    return hashlib.sha256(canonical_text(mix).encode()).hexdigest()[:16]
