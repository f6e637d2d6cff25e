/** Thin typed client for the analysis server's JSON API. */

import type {
  AxesRequest,
  GeometryResponse,
  KnnResponse,
  OrMetrics,
} from "./types";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }

  get isStaleRevision(): boolean {
    return this.status === 409;
  }
}

async function parseError(response: Response): Promise<never> {
  let message = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") message = body.error;
  } catch {
    // keep the status text
  }
  throw new ApiError(response.status, message);
}

export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  loadDatasetCsv(csv: string, labelColumn?: string): Promise<{ revision: number }> {
    return this.post("/api/dataset", { csv, label_column: labelColumn ?? null });
  }

  geometry(): Promise<GeometryResponse> {
    return this.request<GeometryResponse>("/api/geometry");
  }

  patchAxes(body: AxesRequest): Promise<{ revision: number }> {
    return this.post("/api/axes", body);
  }

  straighten(
    caseId: number,
    method: "rotation" | "radius",
    revision?: number,
  ): Promise<{ revision: number }> {
    return this.post("/api/straighten", { case: caseId, method, revision });
  }

  meanCase(label: string): Promise<{ revision: number; case: { id: number } }> {
    return this.post("/api/mean-case", { label });
  }

  classifyKnn(k: number, caseId: number): Promise<KnnResponse> {
    return this.post("/api/classify/knn", { k, case: caseId });
  }

  orReduce(bins: number, tau?: number): Promise<{ revision: number; metrics: OrMetrics }> {
    return this.post("/api/or-reduce", { bins, tau: tau ?? null });
  }

  orClear(): Promise<{ revision: number }> {
    return this.post("/api/or-reduce", { clear: true });
  }

  async svg(): Promise<string> {
    const response = await fetch(this.baseUrl + "/api/svg");
    if (!response.ok) await parseError(response);
    return await response.text();
  }
}
