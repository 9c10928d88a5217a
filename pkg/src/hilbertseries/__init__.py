"""Moment-kernel operators on weighted sequence spaces.

Numerical toolkit for the averaging operators whose matrix entries are the
moments of a finite measure on [0, 1): moment sequences and their decay,
Carleson-type embedding ratios, certified operator application on weighted
l^p spaces, and two-sided operator norm estimation, including the sharp
pi / sin(pi (1 + alpha) / p) constant for bounded densities.
"""

from .errors import (
    ConfigError,
    DomainError,
    HilbertSeriesError,
    HorizonError,
    HypothesisRangeError,
    NonConvergenceError,
    PrecisionCapError,
)
from .measures import (
    Atom,
    CarlesonResult,
    ConstantDensity,
    DecayCheckResult,
    Measure,
    MomentTable,
    MonomialDensity,
    OneMinusTPowerDensity,
    PiecewisePolyDensity,
    carleson_sup,
    dirac_measure,
    lebesgue_measure,
    load_moment_table,
    moment_decay_check,
    moment_table,
    moment_via_tail,
    save_moment_table,
)
from .normest import (
    NormConfig,
    NormEstimate,
    SharpnessConfig,
    SharpnessResult,
    TracePoint,
    divergence_experiment,
    floor_correction,
    kernel_integral,
    kernel_integral_head,
    lower_bound_family,
    norm_experiment,
    plateau_cutoff,
    plateau_left_edge,
    power_iteration_norm,
    sharpness_experiment,
    sharpness_floor,
    upper_bound_beta,
)
from .operator import (
    OperatorContext,
    RatioResult,
    SchurBound,
    apply,
    kernel_upper_ratio,
    make_context,
    ratio,
    ratio_detail,
    schur_beta_bound_in,
    schur_beta_bound_out,
    schur_weight_in,
    schur_weight_out,
)
from .report import ExperimentReport, report_to_dict, trace_csv_text, write_report
from .seqspace import (
    Seq,
    WeightParams,
    abs_tail_bound,
    make_b_family,
    make_epsilon_family,
    make_tau_family,
    norm_tail_bound,
    power_series_sum,
    weighted_norm,
)
from .specfun import beta, gamma, gamma_eval, log_beta, log_gamma, pi_csc, stirling_remainder

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "CarlesonResult",
    "ConfigError",
    "ConstantDensity",
    "DecayCheckResult",
    "DomainError",
    "ExperimentReport",
    "HilbertSeriesError",
    "HorizonError",
    "HypothesisRangeError",
    "Measure",
    "MomentTable",
    "MonomialDensity",
    "NonConvergenceError",
    "NormConfig",
    "NormEstimate",
    "OneMinusTPowerDensity",
    "OperatorContext",
    "PiecewisePolyDensity",
    "PrecisionCapError",
    "RatioResult",
    "SchurBound",
    "Seq",
    "SharpnessConfig",
    "SharpnessResult",
    "TracePoint",
    "WeightParams",
    "abs_tail_bound",
    "apply",
    "beta",
    "carleson_sup",
    "dirac_measure",
    "divergence_experiment",
    "floor_correction",
    "gamma",
    "gamma_eval",
    "kernel_integral",
    "kernel_integral_head",
    "kernel_upper_ratio",
    "lebesgue_measure",
    "load_moment_table",
    "log_beta",
    "log_gamma",
    "lower_bound_family",
    "make_b_family",
    "make_context",
    "make_epsilon_family",
    "make_tau_family",
    "moment_decay_check",
    "moment_table",
    "moment_via_tail",
    "norm_experiment",
    "norm_tail_bound",
    "pi_csc",
    "plateau_cutoff",
    "plateau_left_edge",
    "power_iteration_norm",
    "power_series_sum",
    "ratio",
    "ratio_detail",
    "report_to_dict",
    "save_moment_table",
    "schur_beta_bound_in",
    "schur_beta_bound_out",
    "schur_weight_in",
    "schur_weight_out",
    "sharpness_experiment",
    "sharpness_floor",
    "stirling_remainder",
    "trace_csv_text",
    "upper_bound_beta",
    "weighted_norm",
    "write_report",
]
