"""AHP decision engine: judgment matrices, consistency testing, hierarchical
weight composition, ranking, and an interactive elicitation service."""

from .aggregate import ARITHMETIC_MEAN, GEOMETRIC_MEAN, aggregate_judgments
from .consistency import (
    CR_THRESHOLD,
    DEFAULT_RI_VALUES,
    ConsistencyReport,
    RiTable,
    consistency_report,
)
from .evaluate import (
    CompositeRow,
    CompositeWeightTable,
    EvaluationResult,
    evaluate,
    inconsistency_hotspots,
    rank,
    sensitivity,
)
from .hierarchy import Hierarchy, Node, attach_matrix
from .matrix import (
    RECIPROCAL_ONLY,
    RECIPROCITY_TOL,
    RECIPROCITY_TOL_PUBLISHED,
    SAATY_VALUES,
    STRICT_SCALE,
    JudgmentMatrix,
    ratio_matrix,
    validate_matrix,
)
from .project import (
    FORMAT_VERSION,
    ProjectDocument,
    parse_project,
    serialize_project,
)
from .random_index import simulate_ri
from .report import export_report
from .weights import WeightVector, geometric_mean_weights, max_eigenvalue

__version__ = "0.1.0"

__all__ = [
    "ARITHMETIC_MEAN",
    "CR_THRESHOLD",
    "CompositeRow",
    "CompositeWeightTable",
    "ConsistencyReport",
    "DEFAULT_RI_VALUES",
    "EvaluationResult",
    "FORMAT_VERSION",
    "GEOMETRIC_MEAN",
    "Hierarchy",
    "JudgmentMatrix",
    "Node",
    "ProjectDocument",
    "RECIPROCAL_ONLY",
    "RECIPROCITY_TOL",
    "RECIPROCITY_TOL_PUBLISHED",
    "RiTable",
    "SAATY_VALUES",
    "STRICT_SCALE",
    "WeightVector",
    "aggregate_judgments",
    "attach_matrix",
    "consistency_report",
    "evaluate",
    "export_report",
    "geometric_mean_weights",
    "inconsistency_hotspots",
    "max_eigenvalue",
    "parse_project",
    "rank",
    "ratio_matrix",
    "sensitivity",
    "serialize_project",
    "simulate_ri",
    "validate_matrix",
]
