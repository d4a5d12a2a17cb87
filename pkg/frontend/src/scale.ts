/**
 * The pairwise judgment scale: nine importance grades and their
 * reciprocals, with the verbal anchors shown to analysts. The selector
 * offers exactly these values and nothing else, so the client cannot
 * construct an off-scale submission.
 */

export interface ScaleOption {
  /** Numeric judgment submitted to the service. */
  value: number;
  /** Short display form ("5", "1/5"). */
  label: string;
  /** Verbal anchor for the prompt "how important is LEFT vs RIGHT?". */
  description: string;
}

const ANCHORS: ReadonlyArray<[number, string]> = [
  [9, "left is of paramount importance compared to right"],
  [8, "between very important and paramount"],
  [7, "left is very important compared to right"],
  [6, "between relatively more important and very important"],
  [5, "left is relatively more important than right"],
  [4, "between slightly and relatively more important"],
  [3, "left is slightly more important than right"],
  [2, "between equal and slightly more important"],
  [1, "left and right are equally important"],
];

function reciprocalAnchor(k: number): string {
  const base = ANCHORS.find(([v]) => v === k)![1];
  return base.replace("left", "RIGHT").replace("right", "LEFT").toLowerCase();
}

/** All selectable judgments, in selector order: 9, 8, ..., 2, 1, 1/2, ..., 1/9. */
export const SCALE_OPTIONS: ReadonlyArray<ScaleOption> = [
  ...ANCHORS.map(([v, description]) => ({
    value: v,
    label: String(v),
    description,
  })),
  ...[2, 3, 4, 5, 6, 7, 8, 9].map((k) => ({
    value: 1 / k,
    label: `1/${k}`,
    description: reciprocalAnchor(k),
  })),
];

export const SCALE_VALUES: ReadonlyArray<number> = SCALE_OPTIONS.map(
  (o) => o.value,
);

export function isScaleValue(value: number): boolean {
  return SCALE_VALUES.includes(value);
}

/** Display form of an arbitrary scale value ("1/3" rather than 0.333...). */
export function scaleLabel(value: number): string {
  const hit = SCALE_OPTIONS.find((o) => o.value === value);
  return hit ? hit.label : value.toFixed(4);
}

/** Weights and ratios shown in panels are formatted, never recomputed. */
export function formatWeight(value: number): string {
  return value.toFixed(4);
}

export function formatCr(value: number): string {
  return value.toFixed(4);
}
