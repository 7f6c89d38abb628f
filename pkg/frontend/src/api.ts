/** Thin typed client for the annotation service's /v1 HTTP API. */

import { Progress, SaveResponse, TaskPayload } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

/** The slice of the fetch Response surface the client relies on. */
export type HttpResponse = {
  ok: boolean;
  status: number;
  statusText: string;
  json(): Promise<unknown>;
  text(): Promise<string>;
};

export type FetchLike = (input: string, init?: RequestInit) => Promise<HttpResponse>;

function detailOf(body: unknown): string {
  if (body !== null && typeof body === "object" && "detail" in body) {
    const detail = (body as { detail: unknown }).detail;
    return typeof detail === "string" ? detail : JSON.stringify(detail);
  }
  return JSON.stringify(body);
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init)
  ) {}

  private async request(path: string, init?: RequestInit): Promise<HttpResponse> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        detail = detailOf(await response.json());
      } catch {
        // non-JSON error body; fall back to the status text
      }
      throw new ApiError(response.status, detail);
    }
    return response;
  }

  private async requestJson<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.request(path, init);
    return (await response.json()) as T;
  }

  /** The next pending pair, or null once every pair is done or discarded. */
  async nextPair(): Promise<TaskPayload | null> {
    try {
      return await this.requestJson<TaskPayload>("/v1/pairs/next");
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        return null;
      }
      throw error;
    }
  }

  getPair(id: number): Promise<TaskPayload> {
    return this.requestJson<TaskPayload>(`/v1/pairs/${id}`);
  }

  saveLinks(id: number, links: string, baseVersion: number): Promise<SaveResponse> {
    return this.requestJson<SaveResponse>(`/v1/pairs/${id}/links`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ links, base_version: baseVersion }),
    });
  }

  discard(id: number, reason: string): Promise<TaskPayload> {
    return this.requestJson<TaskPayload>(`/v1/pairs/${id}/discard`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ reason }),
    });
  }

  progress(): Promise<Progress> {
    return this.requestJson<Progress>("/v1/progress");
  }

  async exportGold(): Promise<string> {
    const response = await this.request("/v1/export");
    return await response.text();
  }
}
