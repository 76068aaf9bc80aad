/** Thin typed client for the recommendation service. */

import type {
  ApiErrorItem,
  CorpusIndexJson,
  DiffJson,
  FixtureJson,
  RecommendPayload,
  ScenarioJson,
  SchemaJson,
} from "./types.js";

export class ServiceError extends Error {
  readonly status: number;
  readonly errors: ApiErrorItem[];

  constructor(status: number, errors: ApiErrorItem[]) {
    super(errors.map((e) => e.message).join("; ") || `service error ${status}`);
    this.status = status;
    this.errors = errors;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn: FetchLike = (input, init) => fetch(input, init)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    const body: unknown = await response.json();
    if (!response.ok) {
      const errors = (body as { errors?: ApiErrorItem[] }).errors ?? [];
      throw new ServiceError(response.status, errors);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  getSchema(): Promise<SchemaJson> {
    return this.request<SchemaJson>("/api/schema");
  }

  getCorpus(): Promise<CorpusIndexJson> {
    return this.request<CorpusIndexJson>("/api/corpus");
  }

  getFixture(id: string): Promise<FixtureJson> {
    return this.request<FixtureJson>(`/api/corpus/${encodeURIComponent(id)}`);
  }

  recommend(scenario: ScenarioJson): Promise<RecommendPayload> {
    return this.post<RecommendPayload>("/api/recommend", scenario);
  }

  diff(a: ScenarioJson, b: ScenarioJson): Promise<DiffJson> {
    return this.post<DiffJson>("/api/diff", { a, b });
  }
}
