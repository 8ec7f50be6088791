import type {
  ConstraintBody,
  ErrorBody,
  FeedbackItem,
  MoviesResponse,
  RegisterResponse,
  SearchResponse,
  TriageBuckets,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: string = "",
  ) {
    super(message);
  }
}

/** Thin typed client over the advisor's JSON API; holds the bearer token. */
export class ApiClient {
  private token: string | null = null;

  constructor(private readonly baseUrl: string = "") {}

  get authenticated(): boolean {
    return this.token !== null;
  }

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let parsed: Partial<ErrorBody> = {};
      try {
        parsed = (await response.json()) as Partial<ErrorBody>;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(
        response.status,
        parsed.code ?? "http_error",
        parsed.message ?? response.statusText,
        parsed.detail ?? "",
      );
    }
    return (await response.json()) as T;
  }

  register(login: string, password: string, triage: TriageBuckets): Promise<RegisterResponse> {
    return this.request("POST", "/api/users", { login, password, triage });
  }

  async login(login: string, password: string): Promise<string> {
    const out = await this.request<{ token: string }>("POST", "/api/login", { login, password });
    this.token = out.token;
    return out.token;
  }

  movies(titlePrefix = "", limit = 200): Promise<MoviesResponse> {
    const params = new URLSearchParams({ title_prefix: titlePrefix, limit: String(limit) });
    return this.request("GET", `/api/movies?${params}`);
  }

  putTriage(login: string, triage: TriageBuckets): Promise<RegisterResponse> {
    return this.request("PUT", `/api/users/${encodeURIComponent(login)}/triage`, triage);
  }

  search(constraints: ConstraintBody, n: number): Promise<SearchResponse> {
    return this.request("POST", "/api/search", { constraints, n });
  }

  feedback(sessionId: string, items: FeedbackItem[]): Promise<{ ok: boolean }> {
    return this.request("POST", `/api/search/${sessionId}/feedback`, { items });
  }

  continueSearch(sessionId: string): Promise<SearchResponse> {
    return this.request("POST", `/api/search/${sessionId}/continue`);
  }

  closeSearch(sessionId: string): Promise<{ closed: boolean }> {
    return this.request("POST", `/api/search/${sessionId}/close`);
  }
}
