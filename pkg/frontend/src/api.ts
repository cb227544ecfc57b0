/** Thin typed client for the teaching service's four endpoints. */

import type { Hypothesis, SessionView, Trace } from "./model.js";

export interface CreateSessionRequest {
  class: "tworec" | "lattice";
  mode: "teach" | "elicit";
  teacher?: string;
  grid: number;
  scenario: string;
  seed?: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: unknown,
  ) {
    super(`service responded ${status}`);
  }
}

async function request<T>(
  base: string, path: string, init?: RequestInit,
): Promise<T> {
  const resp = await fetch(base + path, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  let body: unknown = null;
  try {
    body = await resp.json();
  } catch {
    body = null;
  }
  if (!resp.ok) throw new ApiError(resp.status, body);
  return body as T;
}

export class Client {
  constructor(public base: string) {}

  createSession(req: CreateSessionRequest): Promise<SessionView> {
    return request(this.base, "/sessions", {
      method: "POST",
      body: JSON.stringify(req),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return request(this.base, `/sessions/${id}`);
  }

  /** Submit the learner's next hypothesis.
   *  The server replies 422 (ApiError) when it is inconsistent. */
  submitHypothesis(id: string, h: Hypothesis): Promise<SessionView> {
    return request(this.base, `/sessions/${id}/hypothesis`, {
      method: "POST",
      body: JSON.stringify(h),
    });
  }

  getTrace(id: string): Promise<Trace> {
    return request(this.base, `/sessions/${id}/trace`);
  }
}
