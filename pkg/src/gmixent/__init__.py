"""Differential entropy of Gaussian mixtures: estimators, bounds, oracles.

The density's integer powers integrate in closed form, so any polynomial
approximation of -s ln s turns into an analytic entropy estimate.  Two
such estimators are provided: a truncated-logarithm series that certifies
a lower bound, and a weighted least-squares fit that is accurate to a
fraction of a percent at low polynomial orders.  Monte Carlo and grid
quadrature oracles plus two classical upper bounds complete the toolkit.
"""

from .bounds import (
    BoundReport,
    bound_report,
    component_upper_bound,
    moment_upper_bound,
    single_gaussian_entropy,
    single_gaussian_volume,
)
from .config import load_mixture_file, mixture_hash
from .errors import (
    ConfigError,
    ConvergenceError,
    GmixentError,
    NumericalDomainError,
    ResourceLimitError,
    UnsupportedDimensionError,
)
from .estimates import EntropyEstimate
from .mixture import (
    GaussianComponent,
    GaussianMixture,
    ModeResult,
    find_mode,
    log_density,
    mixture_moments,
    sample,
    sum_of_component_peaks,
)
from .oracle import grid_entropy, mc_entropy
from .polyfit import (
    PolyCoefficients,
    PolyfitParams,
    RescaledSystem,
    build_rescaled_system,
    eval_fit_curve,
    fit_coefficients,
    hilbert_inverse,
    polyfit_entropy,
    polyfit_sweep,
)
from .power_integrals import (
    Composition,
    PowerIntegralTable,
    ProductGaussianMoment,
    build_table,
    composition_count,
    enumerate_compositions,
    log_product_integral,
    power_integral,
)
from .presets import load_preset, preset_names
from .taylor import (
    TaylorCoefficients,
    TaylorParams,
    harmonic_number,
    params_from_beta,
    params_sum_of_peaks,
    taylor_coefficients,
    taylor_entropy,
    taylor_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Composition",
    "ConfigError",
    "ConvergenceError",
    "EntropyEstimate",
    "GaussianComponent",
    "GaussianMixture",
    "GmixentError",
    "ModeResult",
    "NumericalDomainError",
    "PolyCoefficients",
    "PolyfitParams",
    "PowerIntegralTable",
    "ProductGaussianMoment",
    "RescaledSystem",
    "ResourceLimitError",
    "TaylorCoefficients",
    "TaylorParams",
    "UnsupportedDimensionError",
    "bound_report",
    "build_rescaled_system",
    "build_table",
    "component_upper_bound",
    "composition_count",
    "enumerate_compositions",
    "eval_fit_curve",
    "find_mode",
    "fit_coefficients",
    "grid_entropy",
    "harmonic_number",
    "hilbert_inverse",
    "load_mixture_file",
    "load_preset",
    "log_density",
    "log_product_integral",
    "mc_entropy",
    "mixture_hash",
    "mixture_moments",
    "moment_upper_bound",
    "params_from_beta",
    "params_sum_of_peaks",
    "polyfit_entropy",
    "polyfit_sweep",
    "power_integral",
    "preset_names",
    "sample",
    "single_gaussian_entropy",
    "single_gaussian_volume",
    "sum_of_component_peaks",
    "taylor_coefficients",
    "taylor_entropy",
    "taylor_sweep",
]
