"""Relaxation in kinetic wealth-exchange models (C++ core)."""

from ._core import (
    ErrorCode,
    ExchangeRule,
    ExpFitResult,
    FitWindow,
    Interval,
    KinexError,
    ModelSpec,
    RelaxationSeries,
    RrnSpec,
    compute_x,
    decay_rate,
    dense_solver_discrepancy,
    equilibrium_window_mean,
    exchange_distributed_saving,
    exchange_fixed_saving,
    exchange_general,
    exchange_pure_gambling,
    fit_pure,
    fit_shifted,
    auto_window,
    k_positive_for_half,
    map_random_saving,
    predict,
    run_experiment,
    run_relaxation,
    run_rrn_relaxation,
    sample_k_positivity,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
