"""Exact-arithmetic toolkit for Reichenbachian common cause systems.

Verifies conjunctive forks and common cause systems over finite probability
spaces with exact rational weights, diagnoses the cancellation phenomenon
that separates aggregate joint conditions from cell-wise screening,
constructs admissible-star number sets of any size, and embeds them as
systems into measure-preserving extensions of a given space.
"""

__version__ = "0.1.0"

from .admissibility import (
    AdmissibleSet,
    AdmissibleStarSet,
    CellSpec,
    ConditionReport,
    DiagnosisReport,
    check_admissible,
    check_admissible_star,
    diagnose_cancellation,
    extract_star_set,
    realize_cells,
    realize_counterexample,
)
from .construct import (
    ConstructionRequest,
    Schedule,
    TailCompletion,
    complete_tail,
    construct_admissible_star,
    solve_joint_constraint,
)
from .errors import (
    BudgetExceeded,
    DegenerateTail,
    ForeignEvent,
    InvalidTarget,
    NoFeasibleParameters,
    NotAPartition,
    NotCorrelated,
    NotRealizable,
    RccsError,
    SingularSolve,
    SizeTooSmall,
    SpaceFormatError,
    StrictCorrelationUnsupported,
    UnknownEvent,
    ZeroMeasureCondition,
    ZeroQuadrantMismatch,
)
from .extend import (
    ExtensionResult,
    HomomorphismReport,
    SplitWeights,
    extend_with_rccs,
    verify_homomorphism,
)
from .forks import (
    DECOMPOSITION_NOTE,
    Decomposition,
    ForkReport,
    RccsReport,
    correlation_decomposition,
    verify_fork,
    verify_rccs,
)
from .oracle import (
    SearchBudget,
    enumerate_rccs,
    restricted_growth_strings,
    stirling2,
    verify_by_enumeration,
)
from .rationals import format_rational, parse_rational
from .spaces import (
    CorrelationSummary,
    Event,
    Partition,
    ProbSpace,
    conditional,
    correlation_summary,
    probability,
    resolve_event,
    space_from_json,
    space_to_json,
    validate_partition,
)

__all__ = [
    "AdmissibleSet",
    "AdmissibleStarSet",
    "BudgetExceeded",
    "CellSpec",
    "ConditionReport",
    "ConstructionRequest",
    "CorrelationSummary",
    "DECOMPOSITION_NOTE",
    "Decomposition",
    "DegenerateTail",
    "DiagnosisReport",
    "Event",
    "ExtensionResult",
    "ForeignEvent",
    "ForkReport",
    "HomomorphismReport",
    "InvalidTarget",
    "NoFeasibleParameters",
    "NotAPartition",
    "NotCorrelated",
    "NotRealizable",
    "Partition",
    "ProbSpace",
    "RccsError",
    "RccsReport",
    "Schedule",
    "SearchBudget",
    "SingularSolve",
    "SizeTooSmall",
    "SpaceFormatError",
    "SplitWeights",
    "StrictCorrelationUnsupported",
    "TailCompletion",
    "UnknownEvent",
    "ZeroMeasureCondition",
    "ZeroQuadrantMismatch",
    "check_admissible",
    "check_admissible_star",
    "complete_tail",
    "conditional",
    "construct_admissible_star",
    "correlation_decomposition",
    "correlation_summary",
    "diagnose_cancellation",
    "enumerate_rccs",
    "extend_with_rccs",
    "extract_star_set",
    "format_rational",
    "parse_rational",
    "probability",
    "realize_cells",
    "realize_counterexample",
    "resolve_event",
    "restricted_growth_strings",
    "space_from_json",
    "space_to_json",
    "stirling2",
    "validate_partition",
    "verify_by_enumeration",
    "verify_fork",
    "verify_homomorphism",
    "verify_rccs",
]
