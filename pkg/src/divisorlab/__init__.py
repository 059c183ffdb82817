"""divisorlab: exact, desk-scale verification of averaged divisor-sum behavior.

Squarefree-restricted divisor sums of multiplicative prime weights, their
small-divisor ratios and prime-split decompositions, Euler-product
constants and main-term predictors, an ordered k-fold factorization
census, and trend-style experiments over doubling ranges -- all grounded
in exact integer class counts from a shared sieve.
"""

from .census import (
    CensusRecord,
    CensusSummary,
    census,
    census_sample,
    census_sample_synthetic,
)
from .divisor_sums import (
    AbcdDecomposition,
    ClassCounts,
    RatioReport,
    abcd,
    full_class_counts,
    full_divisor_sum,
    h_series,
    h_series_cumulative,
    integer_kth_root,
    ratio,
    s_full,
    s_small,
    small_class_counts,
    small_divisor_sum,
    weighted_total,
)
from .errors import (
    ConfigurationError,
    DomainError,
    InsufficientPopulationError,
    RangeError,
)
from .euler import (
    ZETA2,
    WEIGHT_ERROR_THRESHOLD,
    EulerConstant,
    f0,
    f1,
    gamma_fn,
    gaussian_window,
    predict_s_full,
    predict_s_small,
    selberg_exact,
)
from .experiments import (
    TrendReport,
    erdos_kac_histogram,
    gamma_lemma_check,
    monotonicity_scan,
    prop32_scan,
    ratio_convergence,
    selberg_trend,
)
from .sieve import (
    SieveTables,
    build_sieve,
    distinct_primes,
    omega_class_counts,
    squarefree_coprime_count,
)
from .weights import PrimeWeight, e_of_m, g_eval, h_eval, tau_k_squarefree

__version__ = "0.1.0"

__all__ = [
    "AbcdDecomposition",
    "CensusRecord",
    "CensusSummary",
    "ClassCounts",
    "ConfigurationError",
    "DomainError",
    "EulerConstant",
    "InsufficientPopulationError",
    "PrimeWeight",
    "RangeError",
    "RatioReport",
    "SieveTables",
    "TrendReport",
    "WEIGHT_ERROR_THRESHOLD",
    "ZETA2",
    "abcd",
    "build_sieve",
    "census",
    "census_sample",
    "census_sample_synthetic",
    "distinct_primes",
    "e_of_m",
    "erdos_kac_histogram",
    "f0",
    "f1",
    "full_class_counts",
    "full_divisor_sum",
    "g_eval",
    "gamma_fn",
    "gamma_lemma_check",
    "gaussian_window",
    "h_eval",
    "h_series",
    "h_series_cumulative",
    "integer_kth_root",
    "monotonicity_scan",
    "omega_class_counts",
    "predict_s_full",
    "predict_s_small",
    "prop32_scan",
    "ratio",
    "ratio_convergence",
    "s_full",
    "s_small",
    "selberg_exact",
    "selberg_trend",
    "small_class_counts",
    "small_divisor_sum",
    "squarefree_coprime_count",
    "tau_k_squarefree",
    "weighted_total",
]
