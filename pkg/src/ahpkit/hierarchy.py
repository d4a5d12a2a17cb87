"""Goal/criteria/indicator trees and matrix attachment.

Nodes and hierarchies are immutable; attach_matrix returns a new tree.
A hierarchy has one goal root and depth of at least two (the root compares
something). Matrix order must match the child count of its node.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import (
    DuplicateNodeIdError,
    LeafNodeError,
    OrderMismatchError,
    UnknownNodeError,
)
from .matrix import JudgmentMatrix


@dataclass(frozen=True)
class Node:
    id: str
    label: str = ""
    children: tuple["Node", ...] = ()
    matrix: JudgmentMatrix | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("node id must be non-empty")
        if not self.label:
            object.__setattr__(self, "label", self.id)
        if self.matrix is not None:
            if self.is_leaf:
                raise LeafNodeError(
                    f"leaf node {self.id!r} cannot carry a judgment matrix",
                    node=self.id,
                )
            if self.matrix.order != len(self.children):
                raise OrderMismatchError(
                    f"node {self.id!r} has {len(self.children)} children but a "
                    f"matrix of order {self.matrix.order}",
                    node=self.id,
                    expected=len(self.children),
                    got=self.matrix.order,
                )

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class Hierarchy:
    root: Node
    _by_id: dict = field(init=False, repr=False, compare=False)
    _parent: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.root.is_leaf:
            raise ValueError(
                f"hierarchy root {self.root.id!r} has no children; need depth >= 2"
            )
        by_id: dict[str, Node] = {}
        parent: dict[str, str | None] = {self.root.id: None}
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.id in by_id:
                raise DuplicateNodeIdError(
                    f"duplicate node id {node.id!r}", node=node.id
                )
            by_id[node.id] = node
            for child in node.children:
                parent[child.id] = node.id
                stack.append(child)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_parent", parent)

    def node(self, node_id: str) -> Node:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise UnknownNodeError(f"no node with id {node_id!r}", node=node_id) from None

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._by_id

    def parent_id(self, node_id: str) -> str | None:
        self.node(node_id)
        return self._parent[node_id]

    def internal_nodes(self) -> list[Node]:
        """Internal nodes in stable pre-order (root first)."""
        return [n for n in self._preorder() if not n.is_leaf]

    def leaves(self) -> list[Node]:
        return [n for n in self._preorder() if n.is_leaf]

    def levels(self) -> list[list[str]]:
        """Node ids grouped by depth, root level first."""
        out: list[list[str]] = []
        frontier = [self.root]
        while frontier:
            out.append([n.id for n in frontier])
            frontier = [c for n in frontier for c in n.children]
        return out

    def _preorder(self) -> list[Node]:
        out: list[Node] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(node.children))
        return out


def attach_matrix(h: Hierarchy, node_id: str, matrix: JudgmentMatrix) -> Hierarchy:
    """Return a copy of the hierarchy with ``matrix`` bound to one node."""
    target = h.node(node_id)
    if target.is_leaf:
        raise LeafNodeError(
            f"cannot attach a matrix to leaf node {node_id!r}", node=node_id
        )
    if matrix.order != len(target.children):
        raise OrderMismatchError(
            f"node {node_id!r} has {len(target.children)} children but the "
            f"matrix has order {matrix.order}",
            node=node_id, expected=len(target.children), got=matrix.order,
        )

    def rebuild(node: Node) -> Node:
        if node.id == node_id:
            return replace(node, matrix=matrix)
        if node.is_leaf:
            return node
        new_children = tuple(rebuild(c) for c in node.children)
        if all(nc is c for nc, c in zip(new_children, node.children)):
            return node
        return replace(node, children=new_children)

    return Hierarchy(root=rebuild(h.root))
