"""Exception taxonomy shared by the kernel, model, io, CLI and service layers.

Every error carries a stable machine-readable ``code`` (used by the CLI's
``--json-errors`` output and the HTTP error payloads) and an optional
``details`` mapping with structured context.
"""

from __future__ import annotations

from typing import Any


class AhpError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    @property
    def message(self) -> str:
        return str(self)


# --- judgment matrix validation ------------------------------------------

class NotSquareError(AhpError):
    code = "not_square"


class NonPositiveEntryError(AhpError):
    code = "non_positive_entry"


class DiagonalNotOneError(AhpError):
    code = "diagonal_not_one"


class ReciprocityViolationError(AhpError):
    code = "reciprocity_violation"


class ScaleOutOfRangeError(AhpError):
    code = "scale_out_of_range"


class DimensionMismatchError(AhpError):
    code = "dimension_mismatch"


class OrderNotInRiTableError(AhpError):
    code = "order_not_in_ri_table"


class EmptyInputError(AhpError):
    code = "empty_input"


class OrderMismatchError(AhpError):
    code = "order_mismatch"


class OrderTooSmallError(AhpError):
    code = "order_too_small"


# --- hierarchy / evaluation ----------------------------------------------

class UnknownNodeError(AhpError):
    code = "unknown_node"


class LeafNodeError(AhpError):
    code = "leaf_node"


class RootNodeError(AhpError):
    code = "root_node"


class WeightOutOfRangeError(AhpError):
    code = "weight_out_of_range"


class MissingMatrixError(AhpError):
    code = "missing_matrix"


# --- project files ---------------------------------------------------------

class ProjectError(AhpError):
    """Base for errors attributable to a project file (CLI exit code 3)."""

    code = "project_error"


class ProjectSyntaxError(ProjectError):
    """Malformed project text; ``line``/``column`` point into the source."""

    code = "syntax_error"

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(message, line=line, column=column)
        self.line = line
        self.column = column


class DuplicateNodeIdError(ProjectError):
    code = "duplicate_node_id"


class UnknownNodeReferenceError(ProjectError):
    code = "unknown_node_reference"


class VersionUnsupportedError(ProjectError):
    code = "version_unsupported"


# --- elicitation service ---------------------------------------------------

class UnknownSessionError(AhpError):
    code = "unknown_session"


class BadPairError(AhpError):
    code = "bad_pair"


class StaleRevisionError(AhpError):
    code = "stale_revision"


class IncompleteNodeError(AhpError):
    code = "incomplete_node"


class NoEvaluationError(AhpError):
    code = "no_evaluation"


class InvalidProjectError(AhpError):
    code = "invalid_project"
