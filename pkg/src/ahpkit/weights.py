"""Priority derivation: row geometric means and the maximum-eigenvalue estimate.

The weight of row i is the m-th root of its entry product, normalized to
sum 1. Row products are accumulated in the log domain; the naive product
overflows for large orders with extreme ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .matrix import JudgmentMatrix


@dataclass(frozen=True)
class WeightVector:
    """Normalized local priorities plus the raw pre-normalization means."""

    weights: np.ndarray
    raw_geometric_means: np.ndarray

    @property
    def order(self) -> int:
        return self.weights.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightVector):
            return NotImplemented
        return np.array_equal(self.weights, other.weights) and np.array_equal(
            self.raw_geometric_means, other.raw_geometric_means
        )

    def __hash__(self):
        return hash(self.weights.tobytes())


def geometric_mean_weights(matrix: JudgmentMatrix) -> WeightVector:
    """Derive the local weight vector of a judgment matrix."""
    raw = np.exp(np.mean(np.log(matrix.entries), axis=1))
    w = raw / raw.sum()
    w.setflags(write=False)
    raw.setflags(write=False)
    return WeightVector(weights=w, raw_geometric_means=raw)


def max_eigenvalue(matrix: JudgmentMatrix, weights: WeightVector) -> float:
    """Estimate the principal eigenvalue as the mean row ratio (Aw)_i / w_i.

    Equals the matrix order exactly when the matrix is perfectly
    consistent; always >= order for strictly reciprocal matrices.
    """
    w = weights.weights
    if w.size != matrix.order:
        raise DimensionMismatchError(
            f"weight vector of size {w.size} does not match matrix order {matrix.order}",
            expected=matrix.order, got=int(w.size),
        )
    aw = matrix.entries @ w
    return float(np.sum(aw / (matrix.order * w)))
