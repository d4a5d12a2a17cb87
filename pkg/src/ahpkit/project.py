"""The on-disk project format (`*.ahp.json`) and its canonical serialization.

A project document bundles a hierarchy, consensus matrices, optional
per-expert matrices and free-form metadata in one versioned JSON file
(schema in docs/format.md). Parsing validates structure only; numeric
matrix validation happens in the kernel when matrices are attached, using
the document's declared reciprocity tolerance ("strict" for programmatic
data, "published" for matrices transcribed from 4-decimal publications).

Serialization is canonical - sorted keys, fixed-point numbers normalized
to at most 10 significant digits, never scientific notation, trailing
newline - so serialize(parse(text)) is idempotent and documents diff
cleanly. Numbers are canonicalized on document construction, making
parse(serialize(doc)) the identity for every valid document.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import Decimal

from .consistency import RiTable
from .errors import (
    ProjectSyntaxError,
    UnknownNodeReferenceError,
    VersionUnsupportedError,
)
from .hierarchy import Hierarchy, Node, attach_matrix
from .matrix import (
    RECIPROCITY_TOL,
    RECIPROCITY_TOL_PUBLISHED,
    validate_matrix,
)

FORMAT_VERSION = "1"

TOLERANCE_MODES = {
    "strict": RECIPROCITY_TOL,
    "published": RECIPROCITY_TOL_PUBLISHED,
}


def format_number(x: float) -> str:
    """Render a float in canonical form: fixed-point decimal, at most 10
    significant digits, no exponent, no trailing zeros."""
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    out = format(Decimal(f"{x:.10g}"), "f")
    if "." in out:
        out = out.rstrip("0").rstrip(".")
    return out if out not in ("", "-0") else "0"


def canonical_float(x: float) -> float:
    """The float a canonical rendering of ``x`` parses back to."""
    return float(format_number(x))


@dataclass(frozen=True)
class ProjectDocument:
    hierarchy: Hierarchy
    matrices: dict = field(default_factory=dict)  # node id -> row-major tuple
    experts: dict = field(default_factory=dict)  # expert -> node id -> tuple
    metadata: dict = field(default_factory=dict)
    tolerance: str = "strict"
    format_version: str = FORMAT_VERSION

    def __post_init__(self):
        if self.tolerance not in TOLERANCE_MODES:
            raise ValueError(
                f"tolerance must be one of {sorted(TOLERANCE_MODES)}, "
                f"got {self.tolerance!r}"
            )
        object.__setattr__(
            self,
            "matrices",
            {nid: _canonical_entries(v) for nid, v in self.matrices.items()},
        )
        object.__setattr__(
            self,
            "experts",
            {
                expert: {nid: _canonical_entries(v) for nid, v in per_node.items()}
                for expert, per_node in self.experts.items()
            },
        )
        for nid in self.matrices:
            if nid not in self.hierarchy:
                raise UnknownNodeReferenceError(
                    f"matrix references unknown node {nid!r}", node=nid
                )
        for expert, per_node in self.experts.items():
            for nid in per_node:
                if nid not in self.hierarchy:
                    raise UnknownNodeReferenceError(
                        f"expert {expert!r} matrix references unknown node {nid!r}",
                        node=nid, expert=expert,
                    )

    @property
    def reciprocity_tol(self) -> float:
        return TOLERANCE_MODES[self.tolerance]

    def matrix_order(self, node_id: str) -> int:
        return int(round(math.sqrt(len(self.matrices[node_id]))))

    def build_hierarchy(self) -> Hierarchy:
        """Attach all consensus matrices, numerically validated."""
        h = self.hierarchy
        for nid, entries in self.matrices.items():
            m = int(round(math.sqrt(len(entries))))
            matrix = validate_matrix(
                [list(entries[r * m : (r + 1) * m]) for r in range(m)],
                reciprocity_tol=self.reciprocity_tol,
            )
            h = attach_matrix(h, nid, matrix)
        return h

    def to_jsonable(self) -> dict:
        return {
            "version": self.format_version,
            "tolerance": self.tolerance,
            "metadata": dict(self.metadata),
            "hierarchy": _node_to_jsonable(self.hierarchy.root),
            "matrices": {nid: list(v) for nid, v in self.matrices.items()},
            "experts": {
                e: {nid: list(v) for nid, v in per.items()}
                for e, per in self.experts.items()
            },
        }


def _canonical_entries(values) -> tuple:
    return tuple(canonical_float(float(v)) for v in values)


def _node_to_jsonable(node: Node) -> dict:
    out: dict = {"id": node.id, "label": node.label}
    if node.children:
        out["children"] = [_node_to_jsonable(c) for c in node.children]
    return out


def parse_project(text: bytes | str) -> ProjectDocument:
    """Parse and structurally validate a project document."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProjectSyntaxError(f"not valid UTF-8: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProjectSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from exc

    if not isinstance(data, dict):
        raise ProjectSyntaxError("top level must be a JSON object")
    unknown = set(data) - {"version", "hierarchy", "matrices", "experts",
                           "metadata", "tolerance"}
    if unknown:
        raise ProjectSyntaxError(f"unknown top-level keys: {sorted(unknown)}")

    version = data.get("version")
    if not isinstance(version, str):
        raise ProjectSyntaxError('missing or non-string "version" key')
    if version != FORMAT_VERSION:
        raise VersionUnsupportedError(
            f"unsupported format version {version!r} (supported: {FORMAT_VERSION})",
            version=version,
        )

    tolerance = data.get("tolerance", "strict")
    if tolerance not in TOLERANCE_MODES:
        raise ProjectSyntaxError(
            f'"tolerance" must be one of {sorted(TOLERANCE_MODES)}, got {tolerance!r}'
        )

    if "hierarchy" not in data:
        raise ProjectSyntaxError('missing "hierarchy" key')
    root = _parse_node(data["hierarchy"], path="hierarchy")
    if not root.children:
        raise ProjectSyntaxError("hierarchy root has no children; need depth >= 2")
    hierarchy = Hierarchy(root=root)  # raises DuplicateNodeIdError on clashes

    matrices = _parse_matrix_map(data.get("matrices", {}), "matrices")
    experts_raw = data.get("experts", {})
    if not isinstance(experts_raw, dict):
        raise ProjectSyntaxError('"experts" must be an object')
    experts = {
        str(expert): _parse_matrix_map(per, f"experts.{expert}")
        for expert, per in experts_raw.items()
    }

    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in metadata.items()
    ):
        raise ProjectSyntaxError('"metadata" must be an object of strings')

    return ProjectDocument(
        hierarchy=hierarchy,
        matrices=matrices,
        experts=experts,
        metadata=dict(metadata),
        tolerance=tolerance,
        format_version=version,
    )


def _parse_node(value, path: str) -> Node:
    if not isinstance(value, dict):
        raise ProjectSyntaxError(f"{path}: node must be an object")
    node_id = value.get("id")
    if not isinstance(node_id, str) or not node_id:
        raise ProjectSyntaxError(f'{path}: missing or empty "id"')
    label = value.get("label", node_id)
    if not isinstance(label, str):
        raise ProjectSyntaxError(f'{path}: "label" must be a string')
    unknown = set(value) - {"id", "label", "children"}
    if unknown:
        raise ProjectSyntaxError(f"{path}: unknown node keys: {sorted(unknown)}")
    children_raw = value.get("children", [])
    if not isinstance(children_raw, list):
        raise ProjectSyntaxError(f'{path}: "children" must be an array')
    children = tuple(
        _parse_node(c, f"{path}.children[{i}]") for i, c in enumerate(children_raw)
    )
    return Node(id=node_id, label=label, children=children)


def _parse_matrix_map(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ProjectSyntaxError(f'"{path}" must be an object')
    out = {}
    for nid, entries in value.items():
        if not isinstance(entries, list) or not entries:
            raise ProjectSyntaxError(
                f"{path}.{nid}: matrix must be a non-empty array of numbers"
            )
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                   for x in entries):
            raise ProjectSyntaxError(f"{path}.{nid}: matrix entries must be numbers")
        m = int(round(math.sqrt(len(entries))))
        if m * m != len(entries):
            raise ProjectSyntaxError(
                f"{path}.{nid}: {len(entries)} entries do not form a square matrix"
            )
        out[str(nid)] = tuple(float(x) for x in entries)
    return out


def serialize_project(doc: ProjectDocument) -> bytes:
    """Canonical, newline-terminated UTF-8 rendering of a document."""
    return (_to_canonical_json(doc.to_jsonable(), indent=0) + "\n").encode("utf-8")


def _to_canonical_json(value, indent: int) -> str:
    pad = "  " * indent
    child_pad = "  " * (indent + 1)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (int, float)):
        return format_number(float(value))
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [_to_canonical_json(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(child_pad + it for it in items) + "\n" + pad + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            json.dumps(str(k), ensure_ascii=False) + ": "
            + _to_canonical_json(value[k], indent + 1)
            for k in sorted(value, key=str)
        ]
        return "{\n" + ",\n".join(child_pad + it for it in items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def load_ri_table(path) -> RiTable:
    """Read a custom RI table file: {"ri": {"3": 0.58, ...}}."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ProjectSyntaxError(f"invalid RI table file: {exc}") from exc
    if not isinstance(data, dict) or "ri" not in data or not isinstance(data["ri"], dict):
        raise ProjectSyntaxError('RI table file must be an object with an "ri" map')
    try:
        values = {int(k): float(v) for k, v in data["ri"].items()}
        return RiTable(values=values)
    except (TypeError, ValueError) as exc:
        raise ProjectSyntaxError(f"invalid RI table: {exc}") from exc
