"""Exact degenerate harmonic numbers, their relatives, and identity checks in Q[λ]."""

__version__ = "0.1.0"

from .exact import (
    LAMBDA,
    ONE,
    ZERO,
    PolyLambda,
    Rational,
    beta_int,
    binom_poly,
    deg_falling,
    falling_poly,
    rising_poly,
    substitute_neg_lambda,
)
from .series import (
    SeriesError,
    TruncatedSeries,
    gf_deg_derangement,
    gf_deg_exp,
    gf_deg_log,
    gf_H,
    gf_H_order,
    gf_K,
    gf_lah,
    gf_polylog,
    gf_stirling_unsigned,
    series_compose,
    series_div,
    series_mul,
    series_reversion,
)
from .sequences import (
    H_binom,
    H_def,
    H_derangement,
    H_order,
    H_stirling,
    K_binom,
    K_lah,
    K_nested,
    K_single_sum,
    SequenceTable,
    binomial_inversion,
    build_table,
    chain_sums,
    deg_derangement,
    deg_stirling1,
    deg_stirling1_unsigned,
    derangement,
    harmonic,
    harmonic_order,
    iterated_weighted_transform,
    lah,
)
from .verify import SuiteConfig, VerificationReport, run_all, run_identity
