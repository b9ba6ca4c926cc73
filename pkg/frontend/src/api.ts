/** Thin client for the assessment service; every method returns the parsed
 * JSON payload or throws an ApiError carrying the server's diagnostic. */

import {
  AssessmentPayload,
  ClusterResponse,
  DendrogramBlock,
  GridRow,
  ImportResponse,
  RunConfigForm,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(0, `service unreachable: ${String(err)}`);
  }
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = typeof body?.detail === "string" ? body.detail : JSON.stringify(body);
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class VariantApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  health(): Promise<{ status: string }> {
    return request(this.url("/healthz"));
  }

  importRows(spaceId: string, problem: string, rows: GridRow[]): Promise<ImportResponse> {
    return request(this.url("/spaces"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ space_id: spaceId, problem, rows }),
    });
  }

  importCsv(spaceId: string, problem: string, csv: string): Promise<ImportResponse> {
    return request(this.url("/spaces"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ space_id: spaceId, problem, csv }),
    });
  }

  getSpace(spaceId: string): Promise<unknown> {
    return request(this.url(`/spaces/${spaceId}`));
  }

  assess(spaceId: string, config: RunConfigForm): Promise<AssessmentPayload> {
    return request(this.url(`/spaces/${spaceId}/assess`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
  }

  cluster(spaceId: string, k: number): Promise<ClusterResponse> {
    return request(this.url(`/spaces/${spaceId}/cluster`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ k }),
    });
  }

  dendrogram(spaceId: string): Promise<DendrogramBlock> {
    return request(this.url(`/spaces/${spaceId}/dendrogram`));
  }
}
