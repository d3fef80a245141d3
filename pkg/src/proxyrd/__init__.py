"""Exact analysis of a binary cause measured through a noisy binary surrogate.

The package computes the true, surrogate-adjusted, and crude exposure
contrasts in closed form, classifies which premise families a model
satisfies, verifies the orderings those premises predict, searches for
counterexamples when premises are relaxed, and mirrors the whole story in a
standardized linear path diagram.
"""

from .conditions import (
    CONCLUSION_TOL,
    ConditionReport,
    Monotonicity,
    VerificationResult,
    classify,
    monotone_in_c,
    monotone_in_d,
    report_to_dict,
    verification_to_dict,
    verify,
)
from .errors import (
    ConstraintsNotMetError,
    DegenerateCellError,
    DegenerateConditioningError,
    EmptyInputError,
    InvalidVarianceError,
    OutOfRangeError,
    ParseError,
    ProxyRDError,
    SingularDenominatorError,
    UnsatisfiableConstraintsError,
)
from .estimate import (
    PluginEstimates,
    SampleDataset,
    draw_observations,
    estimates_to_dict,
    ingest,
    plugin_estimates,
)
from .exact import (
    Decomposition,
    JointTable,
    LogOdds,
    RiskDifferences,
    decompose,
    joint,
    log_odds,
    mean_y_given_ad,
    posterior_c,
    risk_differences,
    sigmoid,
)
from .model import (
    CONSTRAINT_SETS,
    EQUALITY_TOL,
    Constraint,
    ConstraintSet,
    DiscreteModel,
    model_from_dict,
    model_from_json,
    model_to_dict,
    model_to_json,
    satisfies,
    validate,
)
from .sampler import (
    CSV_HEADER,
    ExperimentConfig,
    ExperimentSummary,
    TrialRecord,
    records_csv,
    run_experiment,
    sample_model,
    substream,
    summary_to_dict,
    write_records,
)
from .search import (
    PROPOSITIONS,
    Counterexample,
    Proposition,
    counterexample_to_dict,
    find_violation,
)
from .sem import (
    OrderingCheck,
    PathModel,
    PathSlopes,
    check_ordering,
    ordering_to_dict,
    path_model_from_dict,
    path_model_from_json,
    path_model_to_dict,
    sample_path_model,
    simulate_and_estimate,
    slopes,
)

__version__ = "0.1.0"

__all__ = [
    "CONCLUSION_TOL",
    "CONSTRAINT_SETS",
    "CSV_HEADER",
    "ConditionReport",
    "Constraint",
    "ConstraintSet",
    "ConstraintsNotMetError",
    "Counterexample",
    "Decomposition",
    "DegenerateCellError",
    "DegenerateConditioningError",
    "DiscreteModel",
    "EQUALITY_TOL",
    "EmptyInputError",
    "ExperimentConfig",
    "ExperimentSummary",
    "InvalidVarianceError",
    "JointTable",
    "LogOdds",
    "Monotonicity",
    "OrderingCheck",
    "OutOfRangeError",
    "PROPOSITIONS",
    "ParseError",
    "PathModel",
    "PathSlopes",
    "PluginEstimates",
    "Proposition",
    "ProxyRDError",
    "RiskDifferences",
    "SampleDataset",
    "SingularDenominatorError",
    "TrialRecord",
    "UnsatisfiableConstraintsError",
    "VerificationResult",
    "check_ordering",
    "classify",
    "counterexample_to_dict",
    "decompose",
    "draw_observations",
    "estimates_to_dict",
    "find_violation",
    "ingest",
    "joint",
    "log_odds",
    "mean_y_given_ad",
    "model_from_dict",
    "model_from_json",
    "model_to_dict",
    "model_to_json",
    "monotone_in_c",
    "monotone_in_d",
    "ordering_to_dict",
    "path_model_from_dict",
    "path_model_from_json",
    "path_model_to_dict",
    "plugin_estimates",
    "posterior_c",
    "records_csv",
    "report_to_dict",
    "risk_differences",
    "run_experiment",
    "sample_model",
    "sample_path_model",
    "satisfies",
    "sigmoid",
    "simulate_and_estimate",
    "slopes",
    "substream",
    "summary_to_dict",
    "validate",
    "verification_to_dict",
    "verify",
    "write_records",
]
