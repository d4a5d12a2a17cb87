"""Pairwise judgment matrices and their validation.

A judgment matrix is a square positive matrix of importance ratios a_ij
with unit diagonal and a_ji = 1/a_ij. Two validation modes exist:
``strict_scale`` additionally confines off-diagonal entries to the 1/9..9
scale used during live elicitation, while ``reciprocal_only`` accepts any
positive ratios (averaged expert matrices routinely leave the scale).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DiagonalNotOneError,
    NonPositiveEntryError,
    NotSquareError,
    ReciprocityViolationError,
    ScaleOutOfRangeError,
)

STRICT_SCALE = "strict_scale"
RECIPROCAL_ONLY = "reciprocal_only"

#: Default relative tolerance on a_ij * a_ji = 1 for programmatic input.
RECIPROCITY_TOL = 1e-9
#: Lenient tolerance for matrices transcribed from 4-decimal publications.
RECIPROCITY_TOL_PUBLISHED = 5e-4

#: The 17 admissible elicitation values: 1/9, 1/8, ..., 1/2, 1, 2, ..., 9.
SAATY_VALUES: tuple[float, ...] = tuple(1.0 / k for k in range(9, 1, -1)) + tuple(
    float(k) for k in range(1, 10)
)

_SCALE_MIN = 1.0 / 9.0
_SCALE_MAX = 9.0
_DIAGONAL_TOL = 1e-12


@dataclass(frozen=True)
class JudgmentMatrix:
    """A validated pairwise comparison matrix.

    Use :func:`validate_matrix` to construct one from raw entries; direct
    construction performs no checking.
    """

    entries: np.ndarray
    order: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JudgmentMatrix):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.order, self.entries.tobytes()))


def validate_matrix(
    entries,
    mode: str = RECIPROCAL_ONLY,
    reciprocity_tol: float = RECIPROCITY_TOL,
) -> JudgmentMatrix:
    """Check raw entries and return an immutable :class:`JudgmentMatrix`.

    Raises NotSquareError, NonPositiveEntryError, DiagonalNotOneError,
    ReciprocityViolationError or (in strict mode) ScaleOutOfRangeError.
    """
    if mode not in (STRICT_SCALE, RECIPROCAL_ONLY):
        raise ValueError(f"unknown validation mode: {mode!r}")
    a = np.asarray(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NotSquareError(
            f"judgment matrix must be square with order >= 1, got shape {a.shape}",
            shape=list(a.shape),
        )
    m = a.shape[0]

    bad = ~(np.isfinite(a) & (a > 0))
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise NonPositiveEntryError(
            f"entry ({i + 1},{j + 1}) = {a[i, j]!r} is not a positive finite ratio",
            row=i, col=j,
        )

    diag_err = np.abs(np.diag(a) - 1.0)
    if diag_err.max(initial=0.0) > _DIAGONAL_TOL:
        i = int(np.argmax(diag_err))
        raise DiagonalNotOneError(
            f"diagonal entry ({i + 1},{i + 1}) = {a[i, i]!r} must equal 1",
            row=i, col=i,
        )

    recip_err = np.abs(a * a.T - 1.0)
    if recip_err.max() > reciprocity_tol:
        i, j = map(int, np.argwhere(recip_err == recip_err.max())[0])
        raise ReciprocityViolationError(
            f"a[{i + 1},{j + 1}] * a[{j + 1},{i + 1}] = {a[i, j] * a[j, i]:.6g} "
            f"deviates from 1 beyond tolerance {reciprocity_tol:g}",
            row=i, col=j, product=float(a[i, j] * a[j, i]),
        )

    if mode == STRICT_SCALE and m > 1:
        off = ~np.eye(m, dtype=bool)
        out = off & ((a < _SCALE_MIN * (1 - 1e-12)) | (a > _SCALE_MAX * (1 + 1e-12)))
        if out.any():
            i, j = map(int, np.argwhere(out)[0])
            raise ScaleOutOfRangeError(
                f"entry ({i + 1},{j + 1}) = {a[i, j]!r} outside the 1/9..9 scale",
                row=i, col=j, value=float(a[i, j]),
            )

    a = a.copy()
    a.setflags(write=False)
    return JudgmentMatrix(entries=a, order=m)


def ratio_matrix(weights) -> JudgmentMatrix:
    """Perfectly consistent matrix a_ij = w_i / w_j from positive weights."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size < 1:
        raise NotSquareError("weights must be a non-empty 1-d array")
    if not (np.isfinite(w).all() and (w > 0).all()):
        raise NonPositiveEntryError("weights must be positive and finite")
    return validate_matrix(w[:, None] / w[None, :])


def nearest_scale_value(value: float, rel_tol: float = 1e-6) -> float | None:
    """Snap ``value`` to the admissible elicitation scale, or None if off-scale."""
    for s in SAATY_VALUES:
        if abs(value - s) <= rel_tol * s:
            return s
    return None
