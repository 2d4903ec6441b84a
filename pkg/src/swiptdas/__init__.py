"""Joint receive power splitting and superposition power allocation for a
two-user distributed-antenna cell whose users harvest energy from the same
downlink signal they decode.

Closed-form allocators (solvers), a brute-force reference optimizer (oracle),
single-site and orthogonal-access baselines, and a paired Monte-Carlo harness
over random cell geometries (montecarlo)."""

from .baselines import solve_noma_only, solve_oma_das
from .channel import (
    ChannelRealization,
    DerivedParams,
    Placement,
    assign_user_roles,
    derive_params,
    interference_variance,
    no_das_params,
    path_loss,
    sample_channels,
    sample_placement,
    select_rru,
)
from .config import ConfigError, SystemConfig, dbm_to_watts, load_config, watts_to_dbm
from .efficiency import EfficiencyCurve, curve_from_config, default_curve, load_curve
from .montecarlo import (
    PROBLEMS,
    SCHEMES,
    AggregateStats,
    TrialRecord,
    run_single_trial,
    run_sweep,
    trial_rng,
)
from .oracle import eps_grid, grid_search, refine
from .rates import (
    RateChannel,
    SchemeRateModel,
    SplitRates,
    compute_rates,
    harvested_power,
    noma_rate_model,
    oma_rate_model,
    rectifier_input_power,
)
from .solvers import (
    PROBLEM_MAX_MIN,
    PROBLEM_MAX_SUM,
    SCHEME_DAS_NOMA,
    SCHEME_DAS_OMA,
    SCHEME_NOMA_ONLY,
    Solution,
    alpha_max,
    alpha_thresholds,
    maxmin_crossing_points,
    maxsum_power_window,
    solve_maxmin,
    solve_maxsum,
)
from .validation import ValidationReport, validate_closed_forms

__version__ = "0.1.0"

__all__ = [
    "AggregateStats",
    "ChannelRealization",
    "ConfigError",
    "DerivedParams",
    "EfficiencyCurve",
    "PROBLEMS",
    "PROBLEM_MAX_MIN",
    "PROBLEM_MAX_SUM",
    "Placement",
    "RateChannel",
    "SCHEMES",
    "SCHEME_DAS_NOMA",
    "SCHEME_DAS_OMA",
    "SCHEME_NOMA_ONLY",
    "SchemeRateModel",
    "Solution",
    "SplitRates",
    "SystemConfig",
    "TrialRecord",
    "ValidationReport",
    "alpha_max",
    "alpha_thresholds",
    "assign_user_roles",
    "compute_rates",
    "curve_from_config",
    "dbm_to_watts",
    "default_curve",
    "derive_params",
    "eps_grid",
    "grid_search",
    "harvested_power",
    "interference_variance",
    "load_config",
    "load_curve",
    "maxmin_crossing_points",
    "maxsum_power_window",
    "no_das_params",
    "noma_rate_model",
    "oma_rate_model",
    "path_loss",
    "rectifier_input_power",
    "refine",
    "run_single_trial",
    "run_sweep",
    "sample_channels",
    "sample_placement",
    "select_rru",
    "solve_maxmin",
    "solve_maxsum",
    "solve_noma_only",
    "solve_oma_das",
    "trial_rng",
    "validate_closed_forms",
    "watts_to_dbm",
]
