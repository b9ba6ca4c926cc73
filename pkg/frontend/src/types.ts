/** Wire types of the assessment service. Field names mirror the JSON
 * payloads exactly; the UI renders these values verbatim and computes no
 * metric of its own. */

export const LEVEL_COLUMNS = [
  "part",
  "organ",
  "effect",
  "phenomenon",
  "input",
  "state_change",
  "action",
] as const;

export type LevelColumn = (typeof LEVEL_COLUMNS)[number];

export interface GridRow {
  concept_id: string;
  concept_name: string;
  instance_id: string;
  part: string;
  organ: string;
  effect: string;
  phenomenon: string;
  input: string;
  state_change: string;
  action: string;
}

export const GRID_COLUMNS: (keyof GridRow)[] = [
  "concept_id",
  "concept_name",
  "instance_id",
  ...LEVEL_COLUMNS,
];

export interface ImportResponse {
  space_id: string;
  n_concepts: number;
  validation: { code: string; severity: string; message: string }[];
}

export interface RunConfigForm {
  provider: "hash" | "service" | "precomputed";
  provider_params: Record<string, unknown>;
  weights: string | number[] | Record<string, number>;
  k: number | null;
}

export interface PerConceptScore {
  concept_id: number;
  name: string;
  score: number;
}

export interface BoxPlotBlock {
  level: LevelColumn;
  q1: number;
  median: number;
  q3: number;
  whisker_low: number;
  whisker_high: number;
  mean: number;
  outliers: { concept_id: number; value: number }[];
}

export interface DendrogramBlock {
  leaves: number[];
  merges: [number, number, number][];
}

export interface AssessmentPayload {
  overall: number;
  per_level: Record<LevelColumn, number>;
  per_concept: PerConceptScore[];
  per_concept_per_level: { concept_id: number; scores: Record<LevelColumn, number> }[];
  weighted_matrix: number[][];
  config: {
    provider: string;
    provider_params: Record<string, unknown>;
    weights: Record<LevelColumn, number>;
    weights_preset: string | null;
    k: number | null;
    provider_id?: string;
    space_id?: string;
  };
  plots: { boxplot: BoxPlotBlock[] };
  clusters?: { k: number; labels: number[] };
  dendrogram?: DendrogramBlock;
}

export interface ClusterResponse {
  k: number;
  labels: number[];
  concept_ids: number[];
}
