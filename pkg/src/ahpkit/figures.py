"""Report figures: bar charts of the composite ranking and per-node locals.

Rendered headless (Agg) to files next to the delimited report output.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluate import EvaluationResult


def render_figures(result: EvaluationResult, out_dir) -> list[Path]:
    """Write ranking.png and local_weights.png into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [_ranking_figure(result, out), _locals_figure(result, out)]


def _ranking_figure(result: EvaluationResult, out: Path) -> Path:
    rows = list(result.composite)
    ids = [r.leaf_id for r in rows][::-1]
    values = [r.global_weight for r in rows][::-1]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.3 * len(rows) + 1)))
    ax.barh(range(len(rows)), values, color="#4878a8")
    ax.set_yticks(range(len(rows)), labels=ids, fontsize=8)
    ax.set_xlabel("global weight")
    ax.set_title("Composite weight ranking")
    ax.margins(y=0.01)
    fig.tight_layout()
    path = out / "ranking.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _locals_figure(result: EvaluationResult, out: Path) -> Path:
    nodes = result.hierarchy.internal_nodes()
    cols = min(3, len(nodes))
    rows = math.ceil(len(nodes) / cols)
    fig, axes = plt.subplots(
        rows, cols, figsize=(4 * cols, 3 * rows), squeeze=False
    )
    for ax in axes.flat:
        ax.set_axis_off()
    for ax, node in zip(axes.flat, nodes):
        ax.set_axis_on()
        wv = result.node_weights[node.id]
        rep = result.node_reports[node.id]
        ids = [c.id for c in node.children]
        ax.bar(range(len(ids)), wv.weights, color="#6aa84f")
        ax.set_xticks(range(len(ids)), labels=ids, fontsize=8, rotation=45)
        flag = "pass" if rep.passed else "FAIL"
        ax.set_title(f"{node.id} (CR={rep.cr:.4f} {flag})", fontsize=9)
    fig.tight_layout()
    path = out / "local_weights.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
