"""Hierarchy evaluation: local weights per node, consistency per node,
global leaf weights by path product, ranking, and what-if perturbation.

A single-child internal node needs no matrix; its child gets local weight
1 and the node reports perfect consistency. Evaluation deliberately runs
to completion when some node fails the CR gate - the caller needs the
weights to show revision hotspots - and flags the failure instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .consistency import ConsistencyReport, RiTable, consistency_report
from .errors import (
    MissingMatrixError,
    RootNodeError,
    UnknownNodeError,
    WeightOutOfRangeError,
)
from .hierarchy import Hierarchy, Node
from .matrix import JudgmentMatrix
from .weights import WeightVector, geometric_mean_weights


@dataclass(frozen=True)
class CompositeRow:
    leaf_id: str
    label: str
    parent_id: str
    local_weight: float
    global_weight: float


@dataclass(frozen=True)
class CompositeWeightTable:
    """Leaf rows sorted by descending global weight, ties by id."""

    rows: tuple[CompositeRow, ...]

    def __iter__(self):
        return iter(self.rows)

    def row(self, leaf_id: str) -> CompositeRow:
        for r in self.rows:
            if r.leaf_id == leaf_id:
                return r
        raise UnknownNodeError(f"no leaf with id {leaf_id!r}", node=leaf_id)


@dataclass(frozen=True)
class EvaluationResult:
    hierarchy: Hierarchy
    node_weights: dict  # internal node id -> WeightVector
    node_reports: dict  # internal node id -> ConsistencyReport
    composite: CompositeWeightTable
    all_passed: bool

    def local_weight(self, node_id: str) -> float:
        """Local weight of a node under its parent (1.0 for the root)."""
        parent_id = self.hierarchy.parent_id(node_id)
        if parent_id is None:
            return 1.0
        parent = self.hierarchy.node(parent_id)
        idx = [c.id for c in parent.children].index(node_id)
        return float(self.node_weights[parent_id].weights[idx])

    def to_dict(self) -> dict:
        """Plain-JSON form shared by the CLI and the HTTP service."""
        return {
            "all_passed": self.all_passed,
            "weights": {
                nid: [float(x) for x in wv.weights]
                for nid, wv in self.node_weights.items()
            },
            "reports": {
                nid: {
                    "mu_max": rep.mu_max,
                    "ci": rep.ci,
                    "ri": rep.ri,
                    "cr": rep.cr,
                    "passed": rep.passed,
                    "order": rep.order,
                }
                for nid, rep in self.node_reports.items()
            },
            "composite": [
                {
                    "leaf": r.leaf_id,
                    "label": r.label,
                    "parent": r.parent_id,
                    "local": r.local_weight,
                    "global": r.global_weight,
                }
                for r in self.composite
            ],
        }


_TRIVIAL_WEIGHTS = WeightVector(
    weights=np.asarray([1.0]), raw_geometric_means=np.asarray([1.0])
)


def _node_weights(node: Node, ri_table: RiTable | None):
    if node.matrix is None:
        if len(node.children) == 1:
            report = ConsistencyReport(
                mu_max=1.0, ci=0.0, ri=0.0, cr=0.0, passed=True, order=1
            )
            return _TRIVIAL_WEIGHTS, report
        raise MissingMatrixError(
            f"internal node {node.id!r} has {len(node.children)} children but "
            f"no judgment matrix",
            node=node.id,
        )
    wv = geometric_mean_weights(node.matrix)
    report = consistency_report(node.matrix, ri_table, weights=wv)
    return wv, report


def _compose(hierarchy: Hierarchy, locals_map: dict) -> CompositeWeightTable:
    """Rank leaves by the product of local weights along each path."""
    rows = []

    def walk(node: Node, acc: float, parent_id: str | None):
        if node.is_leaf:
            rows.append(
                CompositeRow(
                    leaf_id=node.id,
                    label=node.label,
                    parent_id=parent_id or "",
                    local_weight=locals_map.get(node.id, 1.0),
                    global_weight=acc,
                )
            )
            return
        for child in node.children:
            walk(child, acc * locals_map[child.id], node.id)

    walk(hierarchy.root, 1.0, None)
    rows.sort(key=lambda r: (-r.global_weight, r.leaf_id))
    return CompositeWeightTable(rows=tuple(rows))


def evaluate(h: Hierarchy, ri_table: RiTable | None = None) -> EvaluationResult:
    """Derive every node's weights and consistency, then compose globals."""
    node_weights: dict[str, WeightVector] = {}
    node_reports: dict[str, ConsistencyReport] = {}
    locals_map: dict[str, float] = {}
    for node in h.internal_nodes():
        wv, report = _node_weights(node, ri_table)
        node_weights[node.id] = wv
        node_reports[node.id] = report
        for child, w in zip(node.children, wv.weights):
            locals_map[child.id] = float(w)

    return EvaluationResult(
        hierarchy=h,
        node_weights=node_weights,
        node_reports=node_reports,
        composite=_compose(h, locals_map),
        all_passed=all(r.passed for r in node_reports.values()),
    )


def rank(result: EvaluationResult) -> CompositeWeightTable:
    """The ranked composite table of an evaluation."""
    return result.composite


def sensitivity(
    result: EvaluationResult, node_id: str, new_local_weight: float
) -> CompositeWeightTable:
    """What-if: pin one node's local weight and rescale its siblings.

    Siblings keep their relative proportions and the sibling group still
    sums to 1; all global weights and the ranking are recomputed. The
    input result is untouched.
    """
    h = result.hierarchy
    node = h.node(node_id)
    parent_id = h.parent_id(node_id)
    if parent_id is None:
        raise RootNodeError(
            f"cannot perturb the root node {node_id!r}", node=node_id
        )
    if not (0.0 < new_local_weight < 1.0):
        raise WeightOutOfRangeError(
            f"local weight must lie strictly between 0 and 1, got {new_local_weight!r}",
            node=node_id, value=new_local_weight,
        )
    parent = h.node(parent_id)
    if len(parent.children) == 1:
        raise WeightOutOfRangeError(
            f"node {node_id!r} has no siblings; its local weight is fixed at 1",
            node=node_id, value=new_local_weight,
        )

    locals_map = {
        nid: result.local_weight(nid)
        for nid in (n.id for n in h._preorder())
        if h.parent_id(nid) is not None
    }
    old = locals_map[node_id]
    factor = (1.0 - new_local_weight) / (1.0 - old)
    for sibling in parent.children:
        if sibling.id != node_id:
            locals_map[sibling.id] = locals_map[sibling.id] * factor
    locals_map[node_id] = new_local_weight
    return _compose(h, locals_map)


def inconsistency_hotspots(
    matrix: JudgmentMatrix, weights: WeightVector, top_k: int
) -> list[tuple[int, int, float]]:
    """Pairs whose judgment deviates most from the derived-weight ratio.

    Returns up to ``top_k`` tuples (i, j, a_ij * w_j / w_i) for i < j,
    sorted by descending |ln ratio| (1 means the pair is perfectly in line
    with the weights), ties in index order.
    """
    w = weights.weights
    out = []
    for i in range(matrix.order):
        for j in range(i + 1, matrix.order):
            eps = float(matrix.entries[i, j] * w[j] / w[i])
            out.append((i, j, eps))
    out.sort(key=lambda t: (-abs(math.log(t[2])), t[0], t[1]))
    return out[: max(top_k, 0)]
