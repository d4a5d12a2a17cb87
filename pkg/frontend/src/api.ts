/**
 * Typed client for the elicitation service (everything under /api/v1).
 * All numbers displayed anywhere in the UI originate from these response
 * payloads; the client never derives weights or consistency itself.
 */

export interface ConsistencyReport {
  mu_max: number;
  ci: number;
  ri: number;
  cr: number;
  passed: boolean;
  order: number;
}

export type NodeStatus = "incomplete" | "complete" | "consistent" | "inconsistent";

export interface SessionNode {
  id: string;
  label: string;
  children: string[];
  pairs_total: number;
  per_expert: Record<string, number>;
  status: NodeStatus;
}

export interface SessionState {
  session_id: string;
  revision: number;
  tolerance: string;
  experts: string[];
  nodes: SessionNode[];
  has_evaluation: boolean;
}

export interface JudgmentFeedback {
  revision: number;
  expert: string;
  node: string;
  pairs_done: number;
  pairs_total: number;
  status: NodeStatus;
  report: ConsistencyReport | null;
  hotspots: Array<[number, number, number]> | null;
}

export interface CompositeRow {
  leaf: string;
  label: string;
  parent: string;
  local: number;
  global: number;
}

export interface EvaluationResultPayload {
  all_passed: boolean;
  weights: Record<string, number[]>;
  reports: Record<string, ConsistencyReport>;
  composite: CompositeRow[];
}

export interface EvaluationResponse {
  session_id: string;
  revision: number;
  method: string;
  result: EvaluationResultPayload;
}

export interface WhatIfResponse {
  session_id: string;
  revision: number;
  node: string;
  weight: number;
  ranking: CompositeRow[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: Record<string, unknown> = {},
  ) {
    super(message);
    this.name = "ApiError";
  }

  get isStaleRevision(): boolean {
    return this.code === "stale_revision";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ApiError(0, "network", `service unreachable: ${String(err)}`);
    }
    const text = await response.text();
    let body: unknown = null;
    try {
      body = text ? JSON.parse(text) : null;
    } catch {
      body = null;
    }
    if (!response.ok) {
      const envelope = (body ?? {}) as {
        code?: string;
        message?: string;
        details?: Record<string, unknown>;
      };
      throw new ApiError(
        response.status,
        envelope.code ?? "error",
        envelope.message ?? `request failed with status ${response.status}`,
        envelope.details ?? {},
      );
    }
    return body as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/healthz");
  }

  createSession(projectJson: string): Promise<{ session_id: string; revision: number }> {
    return this.request("/api/v1/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: projectJson,
    });
  }

  getSession(sessionId: string): Promise<SessionState> {
    return this.request(`/api/v1/sessions/${encodeURIComponent(sessionId)}`);
  }

  submitJudgment(
    sessionId: string,
    body: {
      expert: string;
      node: string;
      i: number;
      j: number;
      value: number;
      revision: number;
    },
  ): Promise<JudgmentFeedback> {
    return this.request(`/api/v1/sessions/${encodeURIComponent(sessionId)}/judgments`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  evaluate(sessionId: string, method = "geometric_mean"): Promise<EvaluationResponse> {
    return this.request(`/api/v1/sessions/${encodeURIComponent(sessionId)}/evaluate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ method }),
    });
  }

  whatIf(sessionId: string, node: string, weight: number): Promise<WhatIfResponse> {
    return this.request(`/api/v1/sessions/${encodeURIComponent(sessionId)}/what-if`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ node, weight }),
    });
  }

  reportUrl(sessionId: string, format: "csv" | "text"): string {
    return `${this.baseUrl}/api/v1/sessions/${encodeURIComponent(sessionId)}/report?format=${format}`;
  }
}
