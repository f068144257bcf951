/** Thin typed client over the tutoring service. Every method issues
 * exactly one HTTP request; all grading and hint logic stays server-side. */

import type {
  ConflictBody,
  OutcomeResponse,
  ReportPayload,
  SessionResponse,
} from "./types.js";

/** Any non-2xx response the server explained with a JSON body. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

/** 409: the action is not legal in the session's current state. The
 * body carries the server's authoritative state so the view can
 * resynchronize. */
export class ConflictError extends ApiError {
  constructor(readonly body: ConflictBody) {
    super(409, body.detail);
    this.name = "ConflictError";
  }
}

/** The request never produced a response (offline, refused, aborted). */
export class NetworkError extends Error {
  constructor(cause: unknown) {
    super("network error");
    this.name = "NetworkError";
    this.cause = cause;
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

async function parseBody(response: Response): Promise<unknown> {
  try {
    return await response.json();
  } catch {
    return {};
  }
}

function detailOf(body: unknown, status: number): string {
  if (body && typeof body === "object" && "detail" in body) {
    const detail = (body as { detail: unknown }).detail;
    if (typeof detail === "string") return detail;
    return JSON.stringify(detail);
  }
  return `request failed with status ${status}`;
}

export class TutorApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) =>
      fetch(input, init),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (cause) {
      throw new NetworkError(cause);
    }
    return this.unwrap<T>(response);
  }

  private async get<T>(path: string): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, { method: "GET" });
    } catch (cause) {
      throw new NetworkError(cause);
    }
    return this.unwrap<T>(response);
  }

  private async unwrap<T>(response: Response): Promise<T> {
    const body = await parseBody(response);
    if (response.ok) return body as T;
    if (response.status === 409) {
      throw new ConflictError(body as ConflictBody);
    }
    throw new ApiError(response.status, detailOf(body, response.status));
  }

  openSession(studentId: string): Promise<SessionResponse> {
    return this.post("/sessions", { student_id: studentId });
  }

  submitText(sessionId: string, text: string): Promise<OutcomeResponse> {
    return this.post(
      `/sessions/${encodeURIComponent(sessionId)}/attempts`,
      { text },
    );
  }

  submitLatex(sessionId: string, latex: string): Promise<OutcomeResponse> {
    return this.post(
      `/sessions/${encodeURIComponent(sessionId)}/attempts`,
      { latex },
    );
  }

  requestHelp(sessionId: string): Promise<OutcomeResponse> {
    return this.post(`/sessions/${encodeURIComponent(sessionId)}/help`, {});
  }

  skip(sessionId: string): Promise<OutcomeResponse> {
    return this.post(`/sessions/${encodeURIComponent(sessionId)}/skip`, {});
  }

  rate(interventionId: string, helpful: boolean): Promise<void> {
    return this.post(
      `/interventions/${encodeURIComponent(interventionId)}/rating`,
      { helpful },
    );
  }

  learningGains(filter?: string): Promise<ReportPayload> {
    const query = filter ? `?filter=${encodeURIComponent(filter)}` : "";
    return this.get(`/analytics/learning-gains${query}`);
  }
}
