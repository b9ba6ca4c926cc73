/** Pure builders turning an assessment payload into drawable view models.
 *
 * Deliberately dumb: every number displayed to the user is copied verbatim
 * from the payload (scores, quartiles, distances, merge heights); the only
 * arithmetic here is pixel placement. Statistics live server-side, once.
 */

import { AssessmentPayload, BoxPlotBlock, LEVEL_COLUMNS, LevelColumn } from "./types";

export interface Bar {
  conceptId: number;
  name: string;
  /** payload score, untouched; use for the printed label */
  score: number;
  /** pixel height, layout only */
  height: number;
}

export interface BarChartVM {
  bars: Bar[];
  maxScore: number;
}

export function barChart(payload: AssessmentPayload, plotHeight = 160): BarChartVM {
  const bars = payload.per_concept.map((entry) => ({
    conceptId: entry.concept_id,
    name: entry.name,
    score: entry.score,
    height: entry.score * plotHeight,
  }));
  return { bars, maxScore: Math.max(...bars.map((b) => b.score), 0) };
}

export interface BoxVM extends BoxPlotBlock {
  /** level mean from the payload; the orange center line */
  meanLine: number;
}

export function boxPlots(payload: AssessmentPayload): BoxVM[] {
  // payload.plots.boxplot already carries quartiles, whiskers and outliers
  return payload.plots.boxplot.map((block) => ({ ...block, meanLine: block.mean }));
}

export interface HeatmapCell {
  row: number;
  col: number;
  value: number;
  /** 0..1 shade, equal to the distance because distances live in [0,1] */
  shade: number;
}

export interface HeatmapVM {
  order: number[];
  labels: string[];
  cells: HeatmapCell[];
}

/** Heatmap of the weighted pairwise distances. When cluster labels are
 * given, rows/columns are grouped by cluster; that is a permutation of the
 * payload matrix, never a recomputation. */
export function heatmap(payload: AssessmentPayload, clusterLabels?: number[]): HeatmapVM {
  const n = payload.weighted_matrix.length;
  let order = [...Array(n).keys()];
  if (clusterLabels && clusterLabels.length === n) {
    order = order.sort((a, b) => clusterLabels[a]! - clusterLabels[b]! || a - b);
  }
  const cells: HeatmapCell[] = [];
  for (let r = 0; r < n; r++) {
    for (let c = 0; c < n; c++) {
      const value = payload.weighted_matrix[order[r]!]![order[c]!]!;
      cells.push({ row: r, col: c, value, shade: value });
    }
  }
  const labels = order.map((i) => payload.per_concept[i]?.name ?? `concept ${i + 1}`);
  return { order, labels, cells };
}

export interface DendroSegment {
  kind: "riser" | "bridge";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface DendrogramVM {
  leafOrder: number[];
  leafLabels: string[];
  segments: DendroSegment[];
  /** merge heights straight from the payload, for the axis */
  heights: number[];
}

/** Lay the payload's merge list out as line segments. X spacing is uniform
 * over leaves; Y coordinates are the payload merge heights unchanged. */
export function dendrogram(payload: AssessmentPayload): DendrogramVM {
  const block = payload.dendrogram;
  if (!block) throw new Error("payload has no dendrogram block");
  const n = block.leaves.length;
  const names = new Map(payload.per_concept.map((c) => [c.concept_id, c.name]));

  // leaf display order: walk the merge tree left-to-right
  const children = new Map<number, [number, number]>();
  block.merges.forEach(([a, b], m) => children.set(n + m, [a, b]));
  const order: number[] = [];
  const walk = (node: number): void => {
    const pair = children.get(node);
    if (!pair) {
      order.push(node);
      return;
    }
    walk(pair[0]);
    walk(pair[1]);
  };
  walk(n + block.merges.length - 1);

  const xOf = new Map<number, number>();
  const yOf = new Map<number, number>();
  order.forEach((leaf, i) => {
    xOf.set(leaf, i);
    yOf.set(leaf, 0);
  });

  const segments: DendroSegment[] = [];
  block.merges.forEach(([a, b, height], m) => {
    const xa = xOf.get(a)!;
    const xb = xOf.get(b)!;
    segments.push({ kind: "riser", x1: xa, y1: yOf.get(a)!, x2: xa, y2: height });
    segments.push({ kind: "riser", x1: xb, y1: yOf.get(b)!, x2: xb, y2: height });
    segments.push({ kind: "bridge", x1: xa, y1: height, x2: xb, y2: height });
    xOf.set(n + m, (xa + xb) / 2);
    yOf.set(n + m, height);
  });

  return {
    leafOrder: order,
    leafLabels: order.map((i) => names.get(block.leaves[i]!) ?? `#${block.leaves[i]}`),
    segments,
    heights: block.merges.map(([, , h]) => h),
  };
}

export interface InstanceCardVM {
  title: string;
  rows: { level: string; text: string }[];
}

/** Printable detail card for one grid row: the seven construct texts in
 * level order, copied as typed. */
export function instanceCard(row: {
  concept_id: string;
  concept_name: string;
  instance_id: string;
} & Partial<Record<LevelColumn, string>>): InstanceCardVM {
  return {
    title: `${row.concept_name || "concept " + row.concept_id} - instance ${row.instance_id}`,
    rows: LEVEL_COLUMNS.map((level) => ({ level, text: row[level] ?? "" })),
  };
}

export interface ResultViews {
  overall: number;
  bars: BarChartVM;
  boxes: BoxVM[];
  heat: HeatmapVM;
  dendro: DendrogramVM;
}

/** The four result views in one go, all traceable to payload fields. */
export function buildViews(payload: AssessmentPayload): ResultViews {
  for (const level of LEVEL_COLUMNS) {
    if (!(level in payload.per_level)) {
      throw new Error(`payload is missing per-level score for '${level}'`);
    }
  }
  return {
    overall: payload.overall,
    bars: barChart(payload),
    boxes: boxPlots(payload),
    heat: heatmap(payload, payload.clusters?.labels),
    dendro: dendrogram(payload),
  };
}
