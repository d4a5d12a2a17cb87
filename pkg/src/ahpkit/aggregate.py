"""Combining several experts' judgment matrices into one.

The element-wise geometric mean is the default: it provably preserves
reciprocity, which is why published averaged matrices stay reciprocal to
print precision. The element-wise arithmetic mean is kept as a
compatibility mode; it generally breaks reciprocity and the result is
re-validated, surfacing ReciprocityViolationError when it does.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyInputError, OrderMismatchError
from .matrix import RECIPROCITY_TOL, JudgmentMatrix, validate_matrix

GEOMETRIC_MEAN = "geometric_mean"
ARITHMETIC_MEAN = "arithmetic_mean"


def aggregate_judgments(
    matrices: list[JudgmentMatrix],
    method: str = GEOMETRIC_MEAN,
    reciprocity_tol: float = RECIPROCITY_TOL,
) -> JudgmentMatrix:
    """Element-wise mean of expert matrices, validated reciprocal-only.

    A single matrix is returned unchanged (the mean of one). All inputs
    must share the same order.
    """
    if method not in (GEOMETRIC_MEAN, ARITHMETIC_MEAN):
        raise ValueError(f"unknown aggregation method: {method!r}")
    if not matrices:
        raise EmptyInputError("need at least one judgment matrix to aggregate")
    order = matrices[0].order
    for k, m in enumerate(matrices):
        if m.order != order:
            raise OrderMismatchError(
                f"matrix {k} has order {m.order}, expected {order}",
                expected=order, got=m.order,
            )
    if len(matrices) == 1:
        return matrices[0]

    stack = np.stack([m.entries for m in matrices])
    if method == GEOMETRIC_MEAN:
        mean = np.exp(np.mean(np.log(stack), axis=0))
    else:
        mean = np.mean(stack, axis=0)
    return validate_matrix(mean, reciprocity_tol=reciprocity_tol)
