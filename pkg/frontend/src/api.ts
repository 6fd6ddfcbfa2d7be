/**
 * Typed client for the gateway what-if service.  The fetch implementation is
 * injectable so tests can drive the client against recorded bodies.
 */

import type {
  MutationResponse,
  RunStatsBody,
  SnapshotBody,
  SnapshotSummary,
  TraceCardBody,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export interface InjectRequest {
  id: string;
  act_type: string;
  content: string;
  agent: string;
  quality: string;
  rationale?: string;
  edges: { attacker: string; target: string; origin?: string }[];
}

export class WorkbenchClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json();
    if (!response.ok) {
      const code = body?.error?.code ?? "error";
      const message = body?.error?.message ?? response.statusText;
      throw new ServiceError(code, message, response.status);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  listSnapshots(): Promise<{ snapshots: SnapshotSummary[] }> {
    return this.request("/snapshots");
  }

  getSnapshot(id: string): Promise<SnapshotBody> {
    return this.request(`/snapshots/${id}`);
  }

  removeAttack(id: string, attacker: string, target: string): Promise<MutationResponse> {
    return this.post(`/snapshots/${id}/remove-attack`, { attacker, target });
  }

  inject(id: string, body: InjectRequest): Promise<MutationResponse> {
    return this.post(`/snapshots/${id}/inject`, body);
  }

  solve(
    id: string,
    options: { semantics?: string; preferred_strategy?: string; weights?: Record<string, number> },
  ): Promise<MutationResponse> {
    return this.post(`/snapshots/${id}/solve`, options);
  }

  traceCard(id: string, argumentId: string): Promise<TraceCardBody> {
    return this.request(`/snapshots/${id}/trace-cards/${argumentId}`);
  }

  metrics(id: string): Promise<RunStatsBody> {
    return this.request(`/snapshots/${id}/metrics`);
  }
}
