/** State-store behaviour against a scripted fake service: request gating,
 * config echo, stale-response discard, and error surfacing. */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { App } from "../src/app";
import { VariantApi } from "../src/api";
import { AssessmentPayload, GridRow, RunConfigForm } from "../src/types";

const payload: AssessmentPayload = JSON.parse(
  readFileSync(new URL("../fixtures/boil_water_result.json", import.meta.url), "utf-8"),
);

class FakeApi extends VariantApi {
  assessCalls: RunConfigForm[] = [];
  importedRows: GridRow[][] = [];
  delayMs = 0;
  private resolvers: ((value: AssessmentPayload) => void)[] = [];

  constructor() {
    super("http://fake");
  }

  override importRows(_spaceId: string, _problem: string, rows: GridRow[]) {
    this.importedRows.push(rows);
    return Promise.resolve({ space_id: "workspace", n_concepts: 4, validation: [] });
  }

  override assess(_spaceId: string, config: RunConfigForm): Promise<AssessmentPayload> {
    this.assessCalls.push(config);
    if (this.delayMs < 0) {
      // manual resolution mode for the staleness test
      return new Promise((resolve) => this.resolvers.push(resolve));
    }
    return Promise.resolve(structuredClone(payload));
  }

  override cluster(_spaceId: string, k: number) {
    return Promise.resolve({ k, labels: [0, 0, 0, 1].slice(0, 4), concept_ids: [1, 2, 3, 4] });
  }

  resolvePending(index: number, overall: number): void {
    const doc = structuredClone(payload);
    doc.overall = overall;
    this.resolvers[index]!(doc);
  }

  async waitForPending(count: number): Promise<void> {
    while (this.resolvers.length < count) {
      await new Promise((r) => setTimeout(r, 0));
    }
  }
}

function appWithData(api: FakeApi): App {
  const app = new App(api);
  app.grid.addRow({ concept_id: "1", concept_name: "A", instance_id: "1", action: "boil" });
  app.grid.addRow({ concept_id: "2", concept_name: "B", instance_id: "1", action: "warm" });
  return app;
}

describe("assess flow", () => {
  it("imports the grid then assesses with the configured form", async () => {
    const api = new FakeApi();
    const app = appWithData(api);
    app.config.weights = "uniform";
    app.k = 3;
    await app.assess();
    expect(api.importedRows.length).toBe(1);
    expect(api.assessCalls[0]!.weights).toBe("uniform");
    expect(api.assessCalls[0]!.k).toBe(3);
    const snap = app.snapshot();
    expect(snap.result?.overall).toBe(payload.overall);
    expect(snap.views?.bars.bars.length).toBe(4);
    expect(snap.error).toBeNull();
  });

  it("refuses to assess below two concepts", async () => {
    const api = new FakeApi();
    const app = new App(api);
    app.grid.addRow({ concept_id: "1", instance_id: "1" });
    await app.assess();
    expect(api.assessCalls.length).toBe(0);
    expect(app.snapshot().error).toMatch(/two concepts/);
  });

  it("discards a stale response overtaken by a newer request", async () => {
    const api = new FakeApi();
    api.delayMs = -1; // hold responses for manual release
    const app = appWithData(api);
    const first = app.assess();
    const second = app.assess();
    await api.waitForPending(2);
    api.resolvePending(1, 0.999); // newest finishes first
    await second;
    api.resolvePending(0, 0.111); // the stale one trickles in late
    await first;
    expect(app.snapshot().result?.overall).toBe(0.999);
  });

  it("surfaces service failures in the snapshot instead of blanking", async () => {
    const api = new FakeApi();
    api.assess = () => Promise.reject(new Error("embedding service exploded"));
    const app = appWithData(api);
    await app.assess();
    const snap = app.snapshot();
    expect(snap.error).toMatch(/exploded/);
    expect(snap.views).toBeNull();
  });
});

describe("cluster count changes", () => {
  it("re-fetches labels and regroups the heatmap without touching scores", async () => {
    const api = new FakeApi();
    const app = appWithData(api);
    await app.assess();
    const before = app.snapshot().result!.overall;
    await app.setK(2);
    const snap = app.snapshot();
    expect(snap.result!.overall).toBe(before);
    expect(snap.result!.clusters).toEqual({ k: 2, labels: [0, 0, 0, 1] });
    expect(snap.views!.heat.order).toEqual([0, 1, 2, 3]);
  });
});
