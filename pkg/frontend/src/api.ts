/** Typed client for the review API; fetch is injectable for tests. */

import type { CandidatePage, CandidateView, LabelRequest, Stats } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1${path}`, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { error?: string };
        if (body.error) detail = body.error;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  candidates(stage: string, offset: number, limit: number): Promise<CandidatePage> {
    const params = new URLSearchParams({
      stage,
      offset: String(offset),
      limit: String(limit),
    });
    return this.request<CandidatePage>(`/candidates?${params}`);
  }

  candidate(id: string): Promise<CandidateView> {
    return this.request<CandidateView>(`/candidates/${encodeURIComponent(id)}`);
  }

  stats(): Promise<Stats> {
    return this.request<Stats>("/stats");
  }

  postLabel(body: LabelRequest): Promise<{ label: unknown; duplicate: boolean }> {
    return this.request("/labels", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }
}
