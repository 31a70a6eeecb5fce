import type {
  ComparisonDoc,
  ControlResponse,
  DatasetInfo,
  EncoderInfo,
  EncoderMapDoc,
  EvolutionDoc,
  RunState,
  SessionSummary,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  body: unknown;

  constructor(status: number, body: unknown) {
    super(`request failed with ${status}`);
    this.status = status;
    this.body = body;
  }

  /** The authoritative session state carried by a 409 conflict, if any. */
  conflictState(): RunState | null {
    const body = this.body as { error?: { run_state?: RunState } } | null;
    return body?.error?.run_state ?? null;
  }
}

async function toJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => null);
  if (!response.ok) throw new ApiError(response.status, body);
  return body as T;
}

export class Client {
  base: string;

  constructor(base = "") {
    this.base = base;
  }

  private get<T>(path: string): Promise<T> {
    return fetch(this.base + path).then((r) => toJson<T>(r));
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return fetch(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => toJson<T>(r));
  }

  getDatasets(): Promise<DatasetInfo[]> {
    return this.get("/api/datasets");
  }

  getEncoders(): Promise<EncoderInfo[]> {
    return this.get("/api/encoders");
  }

  getEncoderMap(encoder: string, resolution: number): Promise<EncoderMapDoc> {
    return this.get(`/api/encoder-map?encoder=${encoder}&resolution=${resolution}`);
  }

  getEvolution(encoder: string, resolution: number): Promise<EvolutionDoc> {
    return this.get(`/api/evolution?encoder=${encoder}&resolution=${resolution}`);
  }

  getComparison(encoder: string, dataset: string, resolution: number): Promise<ComparisonDoc> {
    return this.get(
      `/api/comparison-map?encoder=${encoder}&dataset=${dataset}&resolution=${resolution}`,
    );
  }

  createSession(body: {
    dataset_id: string;
    encoder_id: string;
    epochs: number;
    learning_rate: number;
    resolution?: number;
    seed?: number;
  }): Promise<SessionSummary> {
    return this.post("/api/sessions", body);
  }

  getSession(sessionId: string): Promise<SessionSummary> {
    return this.get(`/api/sessions/${sessionId}`);
  }

  control(sessionId: string, action: "start" | "pause" | "resume" | "stop"): Promise<ControlResponse> {
    return this.post(`/api/sessions/${sessionId}/control`, { action });
  }

  eventsUrl(sessionId: string): string {
    return `${this.base}/api/sessions/${sessionId}/events`;
  }
}
