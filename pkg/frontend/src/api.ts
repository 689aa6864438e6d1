// Thin fetch client for the workbench service. The fetch function is
// injectable so pure-logic tests can stub the wire.

import type {
  AnnotationRecordDoc,
  NamedDoc,
  RederiveResponseDoc,
  RunListDoc,
  ThoughtDoc,
  TraversalDoc,
  TreeDoc,
  Verdict,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (error) {
      throw new ApiError(`service unreachable: ${String(error)}`, 0);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // keep statusText
      }
      throw new ApiError(detail, response.status);
    }
    return (await response.json()) as T;
  }

  listRuns(filter = ""): Promise<RunListDoc> {
    const query = filter ? `?filter=${encodeURIComponent(filter)}` : "";
    return this.request<RunListDoc>(`/runs${query}`);
  }

  getTree(runId: string): Promise<TreeDoc> {
    return this.request<TreeDoc>(`/runs/${encodeURIComponent(runId)}/tree`);
  }

  getTraversals(runId: string): Promise<{ traversals: NamedDoc<TraversalDoc>[] }> {
    return this.request(`/runs/${encodeURIComponent(runId)}/traversals`);
  }

  getThoughts(runId: string): Promise<{ thoughts: NamedDoc<ThoughtDoc>[] }> {
    return this.request(`/runs/${encodeURIComponent(runId)}/thoughts`);
  }

  getAnnotations(runId: string): Promise<{ annotations: AnnotationRecordDoc[] }> {
    return this.request(`/runs/${encodeURIComponent(runId)}/annotations`);
  }

  postAnnotation(
    runId: string,
    body: { node_id: string; verdict: Verdict; comment?: string; author?: string },
  ): Promise<{ id: string; record: AnnotationRecordDoc }> {
    return this.request(`/runs/${encodeURIComponent(runId)}/annotations`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  rederive(runId: string, body: { trials?: number; seed?: number } = {}): Promise<RederiveResponseDoc> {
    return this.request(`/runs/${encodeURIComponent(runId)}/rederive`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }
}
