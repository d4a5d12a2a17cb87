"""Report export: the per-node consistency table and the composite ranking.

Values are presented the way the source tables print them: local weights
and consistency indices rounded to a fixed number of decimals with
trailing zeros stripped, and each composite global weight shown as the
exact decimal product of the rounded local weights along the leaf's path
(so a leaf with locals 0.1775 and 0.372 prints 0.06603, not a 16-digit
float). Ranking order always comes from the full-precision evaluation.
"""

from __future__ import annotations

import csv
import io
from decimal import Decimal

from .evaluate import EvaluationResult

REPORT_PRECISION = 4

CONSISTENCY_HEADER = ["node", "weights", "mu_max", "CI", "RI", "CR", "result"]
COMPOSITE_HEADER = ["leaf", "label", "parent", "local_weight", "global_weight"]


def round_decimal(x: float, precision: int = REPORT_PRECISION) -> Decimal:
    """Round to ``precision`` decimals, normalizing negative zero."""
    d = round(Decimal(repr(float(x))), precision)
    if d == 0:
        return Decimal(0)
    return d


def format_value(x: float, precision: int = REPORT_PRECISION) -> str:
    """Fixed-point rendering with trailing zeros stripped ("0.245", "6")."""
    return _strip(round_decimal(x, precision))


def _strip(d: Decimal) -> str:
    out = format(d, "f")
    if "." in out:
        out = out.rstrip("0").rstrip(".")
    return out if out not in ("", "-0") else "0"


def _display_globals(result: EvaluationResult, precision: int) -> dict[str, str]:
    """Leaf id -> exact decimal product of rounded locals along its path."""
    h = result.hierarchy
    out: dict[str, str] = {}

    def walk(node, acc: Decimal):
        if node.is_leaf:
            out[node.id] = _strip(acc)
            return
        wv = result.node_weights[node.id]
        for child, w in zip(node.children, wv.weights):
            walk(child, acc * round_decimal(float(w), precision))

    walk(h.root, Decimal(1))
    return out


def _consistency_rows(result: EvaluationResult, precision: int) -> list[list[str]]:
    rows = []
    for node in result.hierarchy.internal_nodes():
        rep = result.node_reports[node.id]
        wv = result.node_weights[node.id]
        rows.append([
            node.id,
            " ".join(format_value(w, precision) for w in wv.weights),
            format_value(rep.mu_max, precision),
            format_value(rep.ci, precision),
            format_value(rep.ri, precision),
            format_value(rep.cr, precision),
            "Passed" if rep.passed else "Failed",
        ])
    return rows


def _composite_rows(result: EvaluationResult, precision: int) -> list[list[str]]:
    shown = _display_globals(result, precision)
    return [
        [
            row.leaf_id,
            row.label,
            row.parent_id,
            format_value(row.local_weight, precision),
            shown[row.leaf_id],
        ]
        for row in result.composite
    ]


def export_report(
    result: EvaluationResult,
    format: str = "csv",
    precision: int = REPORT_PRECISION,
) -> bytes:
    """Render both report tables as UTF-8 ``csv`` or aligned ``text``."""
    if format == "csv":
        return _export_csv(result, precision)
    if format == "text":
        return _export_text(result, precision)
    raise ValueError(f"unknown report format: {format!r}")


def _export_csv(result: EvaluationResult, precision: int) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CONSISTENCY_HEADER)
    writer.writerows(_consistency_rows(result, precision))
    writer.writerow([])
    writer.writerow(COMPOSITE_HEADER)
    writer.writerows(_composite_rows(result, precision))
    return buf.getvalue().encode("utf-8")


def _aligned(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [
        max(len(header[c]), *(len(r[c]) for r in rows)) if rows else len(header[c])
        for c in range(len(header))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return lines


def _export_text(result: EvaluationResult, precision: int) -> bytes:
    lines = ["Indicator weights and consistency", ""]
    lines += _aligned(CONSISTENCY_HEADER, _consistency_rows(result, precision))
    lines += ["", "Composite ranking", ""]
    lines += _aligned(COMPOSITE_HEADER, _composite_rows(result, precision))
    status = "all nodes passed" if result.all_passed else "CONSISTENCY FAILURES PRESENT"
    lines += ["", f"Consistency: {status}", ""]
    return ("\n".join(lines)).encode("utf-8")
