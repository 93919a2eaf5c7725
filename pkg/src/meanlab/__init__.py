"""meanlab: numerically careful bivariate means and their order structure.

Evaluation is organized around the canonical reduction M(a, b) =
(a+b)/2 * phi_M(|b-a|/(a+b)): every mean is a descriptor whose
characteristic function phi is computed by stable closed forms away from
the diagonal and by exact series coefficients near it.  On top of that sit
characteristic numbers (the t -> 1 limit), ordering verdicts on canonical
grids, sharp-constant bisection, and cancellation checks against
one-parameter families.
"""

from . import characteristics, core, expr, families, oracle, orderlab, suite
from .characteristics import (
    ComparisonExponent,
    PhiSeries,
    SigmaResult,
    UnsupportedSigmaError,
    closed_sigma,
    comparison_exponent,
    comparison_exponent_report,
    phi_series,
    sigma,
    sigma_closed,
)
from .core import (
    A,
    DomainError,
    ELEMENTARY,
    G,
    H,
    I,
    L,
    MeanAxiomReport,
    MeanDescriptor,
    P,
    S,
    T,
    canonical,
    custom_mean,
    dual,
    eval_elementary,
    phi,
    series_coefficients,
    validate_mean,
    value,
)
from .expr import MeanExprError, parse_mean_expr
from .families import (
    FAMILIES,
    FamilyDescriptor,
    GENLOG_FAMILY,
    HOLDER_FAMILY,
    K_FAMILY,
    LAMBDA_FAMILY,
    LEHMER_FAMILY,
    ParameterError,
    STOLARSKY_DIAG_FAMILY,
    STOLARSKY_FAMILY,
    WeightedHolder,
    gen_log,
    holder,
    k_mean,
    lambda_mean,
    lehmer,
    power_family,
    power_transform,
    stolarsky,
    weighted_holder,
)
from .orderlab import (
    BestConstantResult,
    BisectionStep,
    BracketError,
    CancellationVerdict,
    Direction,
    GridSpec,
    MemberCheck,
    OrderingReport,
    Verdict,
    best_constant,
    build_grid,
    cancelling_verdict,
    compare,
    concavity_gap,
    concavity_gap_second_derivative,
    default_grid,
    finite_family,
    left_cancelling_verdict,
    lemma34_residual,
    theorem11_ratio,
    verify_chain,
)
from .suite import CheckOutcome, run_suite

__version__ = "0.1.0"

__all__ = [
    "A", "BestConstantResult", "BisectionStep", "BracketError",
    "CancellationVerdict", "CheckOutcome", "ComparisonExponent", "Direction",
    "DomainError", "ELEMENTARY", "FAMILIES", "FamilyDescriptor", "G",
    "GENLOG_FAMILY", "GridSpec", "H", "HOLDER_FAMILY", "I", "K_FAMILY", "L",
    "LAMBDA_FAMILY", "LEHMER_FAMILY", "MeanAxiomReport", "MeanDescriptor",
    "MeanExprError", "MemberCheck", "OrderingReport", "P", "ParameterError",
    "PhiSeries", "S", "STOLARSKY_DIAG_FAMILY", "STOLARSKY_FAMILY",
    "SigmaResult", "T", "UnsupportedSigmaError", "Verdict", "WeightedHolder",
    "best_constant", "build_grid", "cancelling_verdict", "canonical",
    "characteristics", "closed_sigma", "compare", "comparison_exponent",
    "comparison_exponent_report", "concavity_gap",
    "concavity_gap_second_derivative", "core", "custom_mean", "default_grid",
    "dual", "eval_elementary", "expr", "families", "finite_family", "gen_log",
    "holder", "k_mean", "lambda_mean", "left_cancelling_verdict", "lehmer",
    "lemma34_residual", "oracle", "orderlab", "parse_mean_expr", "phi",
    "phi_series", "power_family", "power_transform", "run_suite",
    "series_coefficients", "sigma", "sigma_closed", "stolarsky", "suite",
    "theorem11_ratio", "validate_mean", "value", "verify_chain",
    "weighted_holder",
]
