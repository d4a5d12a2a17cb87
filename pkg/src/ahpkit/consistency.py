"""Consistency testing: CI, the random-index table, and the CR < 0.1 gate.

Orders 1 and 2 are perfectly consistent by construction (a 2x2 reciprocal
matrix always has eigenvalue 2), so CI and CR are defined as 0 there and
the RI = 0 division never happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import OrderNotInRiTableError
from .matrix import JudgmentMatrix
from .weights import WeightVector, geometric_mean_weights, max_eigenvalue

#: CR threshold below which a matrix passes the consistency check.
CR_THRESHOLD = 0.1

#: Canonical random-index values for orders 1..11.
DEFAULT_RI_VALUES: Mapping[int, float] = {
    1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24,
    7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49, 11: 1.51,
}


@dataclass(frozen=True)
class RiTable:
    """Random-index lookup by matrix order.

    Values must be 0 for orders 1 and 2 and strictly increasing from
    order 3 upward.
    """

    values: Mapping[int, float]

    def __post_init__(self):
        vals = dict(self.values)
        if not vals:
            raise ValueError("RI table is empty")
        for m, ri in vals.items():
            if m < 1:
                raise ValueError(f"invalid matrix order {m} in RI table")
            if ri < 0:
                raise ValueError(f"negative RI {ri} for order {m}")
        for m in (1, 2):
            if vals.get(m, 0.0) != 0.0:
                raise ValueError(f"RI for order {m} must be 0")
        increasing = sorted(m for m in vals if m >= 3)
        for a, b in zip(increasing, increasing[1:]):
            if vals[a] >= vals[b]:
                raise ValueError(
                    f"RI values must be strictly increasing for m >= 3 "
                    f"({a}: {vals[a]} vs {b}: {vals[b]})"
                )
        object.__setattr__(self, "values", vals)

    @classmethod
    def default(cls) -> "RiTable":
        return cls(values=DEFAULT_RI_VALUES)

    def for_order(self, order: int) -> float:
        if order in (1, 2):
            return self.values.get(order, 0.0)
        try:
            return self.values[order]
        except KeyError:
            raise OrderNotInRiTableError(
                f"no random index for order {order}; supply a custom table "
                f"(covered orders: {sorted(self.values)})",
                order=order,
            ) from None


@dataclass(frozen=True)
class ConsistencyReport:
    """One matrix's consistency diagnostics (a Table-4-style row)."""

    mu_max: float
    ci: float
    ri: float
    cr: float
    passed: bool
    order: int


def consistency_report(
    matrix: JudgmentMatrix,
    ri_table: RiTable | None = None,
    weights: WeightVector | None = None,
) -> ConsistencyReport:
    """Compute mu_max, CI, RI and CR for a matrix and apply the CR < 0.1 gate.

    ``weights`` may be passed to reuse an already-derived vector; it must
    come from the same matrix.
    """
    table = ri_table if ri_table is not None else RiTable.default()
    w = weights if weights is not None else geometric_mean_weights(matrix)
    mu = max_eigenvalue(matrix, w)
    m = matrix.order
    if m <= 2:
        return ConsistencyReport(
            mu_max=mu, ci=0.0, ri=table.for_order(m), cr=0.0, passed=True, order=m
        )
    ri = table.for_order(m)
    ci = (mu - m) / (m - 1)
    cr = ci / ri
    return ConsistencyReport(
        mu_max=mu, ci=ci, ri=ri, cr=cr, passed=bool(cr < CR_THRESHOLD), order=m
    )
