/**
 * DOM bar charts and badges. Pure presentation: bar lengths are linear in
 * the service-supplied weights, labels are formatted with scale.ts
 * helpers, nothing is recomputed.
 */

import { CompositeRow, ConsistencyReport, NodeStatus } from "./api.js";
import { formatCr, formatWeight } from "./scale.js";

export function renderRankingBars(container: HTMLElement, rows: CompositeRow[]): void {
  container.replaceChildren();
  const max = rows.length ? Math.max(...rows.map((r) => r.global)) : 1;
  for (const row of rows) {
    const line = document.createElement("div");
    line.className = "bar-line";

    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = row.leaf;
    label.title = row.label;

    const track = document.createElement("div");
    track.className = "bar-track";
    const bar = document.createElement("div");
    bar.className = "bar-fill";
    bar.style.width = `${(100 * row.global) / max}%`;
    bar.dataset.leaf = row.leaf;
    track.appendChild(bar);

    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = formatWeight(row.global);

    line.append(label, track, value);
    container.appendChild(line);
  }
}

export function renderLocalBars(
  container: HTMLElement,
  childIds: string[],
  weights: number[],
): void {
  container.replaceChildren();
  const max = weights.length ? Math.max(...weights) : 1;
  childIds.forEach((child, idx) => {
    const w = weights[idx] ?? 0;
    const line = document.createElement("div");
    line.className = "bar-line";
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = child;
    const track = document.createElement("div");
    track.className = "bar-track";
    const bar = document.createElement("div");
    bar.className = "bar-fill bar-fill-local";
    bar.style.width = `${(100 * w) / max}%`;
    track.appendChild(bar);
    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = formatWeight(w);
    line.append(label, track, value);
    container.appendChild(line);
  });
}

/** Green badge iff the service says the ratio test passed (cr < 0.1). */
export function crBadge(report: ConsistencyReport): HTMLElement {
  const badge = document.createElement("span");
  badge.className = `badge ${report.passed ? "badge-pass" : "badge-fail"}`;
  badge.textContent = `CR ${formatCr(report.cr)}`;
  return badge;
}

export function statusBadge(status: NodeStatus): HTMLElement {
  const badge = document.createElement("span");
  const cls: Record<NodeStatus, string> = {
    incomplete: "badge-idle",
    complete: "badge-idle",
    consistent: "badge-pass",
    inconsistent: "badge-fail",
  };
  badge.className = `badge ${cls[status]}`;
  badge.textContent = status;
  return badge;
}
