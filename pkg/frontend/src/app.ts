/** Application state: the editable grid, the run-config form, the latest
 * result payload, and the chosen cluster count. One in-flight assess
 * request at a time; responses overtaken by a newer request are dropped. */

import { VariantApi } from "./api";
import { SpaceGrid } from "./grid";
import { AssessmentPayload, RunConfigForm } from "./types";
import { buildViews, ResultViews } from "./viewmodels";

export interface AppSnapshot {
  canAssess: boolean;
  blockedReason: string | null;
  busy: boolean;
  error: string | null;
  result: AssessmentPayload | null;
  views: ResultViews | null;
  k: number;
}

type Listener = (snapshot: AppSnapshot) => void;

export class App {
  readonly grid = new SpaceGrid();
  config: RunConfigForm = {
    provider: "hash",
    provider_params: {},
    weights: "paper-default",
    k: null,
  };
  spaceId = "workspace";
  problem = "";
  k = 2;

  private result: AssessmentPayload | null = null;
  private views: ResultViews | null = null;
  private error: string | null = null;
  private busy = false;
  private requestSeq = 0;
  private listeners: Listener[] = [];

  constructor(readonly api: VariantApi) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  snapshot(): AppSnapshot {
    const ready = this.grid.readyToAssess();
    return {
      canAssess: ready.ok && !this.busy,
      blockedReason: ready.reason,
      busy: this.busy,
      error: this.error,
      result: this.result,
      views: this.views,
      k: this.k,
    };
  }

  private emit(): void {
    const snap = this.snapshot();
    for (const listener of this.listeners) listener(snap);
  }

  loadCsv(text: string): void {
    this.grid.loadCsv(text);
    this.emit();
  }

  /** Import the grid and run one assessment; a stale response (superseded
   * by a newer click) is discarded silently. */
  async assess(): Promise<void> {
    const ready = this.grid.readyToAssess();
    if (!ready.ok) {
      this.error = ready.reason;
      this.emit();
      return;
    }
    const seq = ++this.requestSeq;
    this.busy = true;
    this.error = null;
    this.emit();
    try {
      await this.api.importRows(this.spaceId, this.problem, this.grid.toRequestRows());
      const payload = await this.api.assess(this.spaceId, {
        ...this.config,
        k: this.k,
      });
      if (seq !== this.requestSeq) return; // a newer request took over
      this.result = payload;
      this.views = buildViews(payload);
    } catch (err) {
      if (seq !== this.requestSeq) return;
      this.error = err instanceof Error ? err.message : String(err);
      this.views = null;
    } finally {
      if (seq === this.requestSeq) {
        this.busy = false;
        this.emit();
      }
    }
  }

  /** Changing k re-fetches cluster labels and regroups the heatmap; all
   * scores stay exactly as the last assessment reported them. */
  async setK(k: number): Promise<void> {
    this.k = k;
    if (!this.result) {
      this.emit();
      return;
    }
    try {
      const clusters = await this.api.cluster(this.spaceId, k);
      this.result = { ...this.result, clusters: { k: clusters.k, labels: clusters.labels } };
      this.views = buildViews(this.result);
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    }
    this.emit();
  }
}
