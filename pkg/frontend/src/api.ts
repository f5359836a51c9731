// Thin typed client for the prediction service. The fetch implementation is
// injectable so tests can drive the app without a network.

export interface PredictionResult {
  id: string;
  score: number;
  label: string;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** What the UI needs from the backend; ApiClient is the real implementation. */
export interface PredictApi {
  predict(text: string): Promise<PredictionResult>;
  sendFeedback(id: string, correct: boolean): Promise<void>;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** 429 from the server; carries the Retry-After value in seconds. */
export class RateLimitedError extends Error {
  constructor(public readonly retryAfterSeconds: number) {
    super(`rate limited, retry in ${retryAfterSeconds}s`);
    this.name = "RateLimitedError";
  }
}

async function errorMessage(resp: Response): Promise<string> {
  try {
    const body = await resp.json();
    if (body && typeof body.message === "string") return body.message;
  } catch {
    // non-JSON error body; fall through to the generic message
  }
  return `request failed with status ${resp.status}`;
}

export class ApiClient implements PredictApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async post(route: string, payload: unknown): Promise<Response> {
    return this.fetchFn(`${this.baseUrl}${route}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async predict(text: string): Promise<PredictionResult> {
    const resp = await this.post("/predict", { text });
    if (resp.status === 429) {
      const raw = resp.headers.get("Retry-After");
      const parsed = raw === null ? NaN : parseInt(raw, 10);
      throw new RateLimitedError(Number.isNaN(parsed) || parsed < 1 ? 60 : parsed);
    }
    if (!resp.ok) {
      throw new ApiError(resp.status, await errorMessage(resp));
    }
    const body = await resp.json();
    if (
      typeof body.id !== "string" ||
      typeof body.prediction !== "number" ||
      typeof body.label !== "string"
    ) {
      throw new ApiError(resp.status, "malformed prediction response");
    }
    return { id: body.id, score: body.prediction, label: body.label };
  }

  async sendFeedback(id: string, correct: boolean): Promise<void> {
    const resp = await this.post("/feedback", { id, correct });
    if (!resp.ok) {
      throw new ApiError(resp.status, await errorMessage(resp));
    }
  }
}
