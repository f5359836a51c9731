// UI state machine. All transitions run through the App class so the
// invariants (one in-flight request, one /predict per cooldown window,
// feedback only for the latest prediction) live in exactly one place.

import { PredictApi, PredictionResult, RateLimitedError } from "./api.js";

export type Phase =
  | "idle"
  | "awaiting_prediction"
  | "showing_prediction"
  | "feedback_sent"
  | "error"
  | "cooling_down";

export interface UiState {
  phase: Phase;
  lastPrediction: PredictionResult | null;
  /** Epoch-ms timestamp before which no new /predict may be sent. */
  cooldownUntil: number | null;
  errorMessage: string | null;
  /** True while a /feedback request is in flight. */
  feedbackPending: boolean;
}

export function initialState(): UiState {
  return {
    phase: "idle",
    lastPrediction: null,
    cooldownUntil: null,
    errorMessage: null,
    feedbackPending: false,
  };
}

export const COOLDOWN_MS = 60_000;

export interface AppDeps {
  api: PredictApi;
  /** Injectable clock returning epoch milliseconds. */
  now: () => number;
  onChange?: (state: UiState) => void;
}

export function cooldownActive(state: UiState, now: number): boolean {
  return state.cooldownUntil !== null && now < state.cooldownUntil;
}

export class App {
  private state: UiState = initialState();

  constructor(private readonly deps: AppDeps) {}

  getState(): UiState {
    return this.state;
  }

  private setState(next: UiState): void {
    this.state = next;
    this.deps.onChange?.(next);
  }

  /**
   * Submit a headline for prediction. Only legal from idle; anything else
   * (in-flight request, active cooldown) is blocked client-side and never
   * reaches the network.
   */
  async submitHeadline(text: string): Promise<void> {
    const trimmed = text.trim();
    if (trimmed === "") return;
    if (this.state.phase !== "idle") {
      if (this.state.phase !== "awaiting_prediction" && cooldownActive(this.state, this.deps.now())) {
        // surface the wait instead of silently ignoring the click
        this.setState({ ...this.state, phase: "cooling_down", feedbackPending: false });
      }
      return;
    }
    if (cooldownActive(this.state, this.deps.now())) {
      this.setState({ ...this.state, phase: "cooling_down" });
      return;
    }

    this.setState({
      ...this.state,
      phase: "awaiting_prediction",
      lastPrediction: null,
      errorMessage: null,
    });
    try {
      const prediction = await this.deps.api.predict(trimmed);
      this.setState({
        ...this.state,
        phase: "showing_prediction",
        lastPrediction: prediction,
        cooldownUntil: this.deps.now() + COOLDOWN_MS,
      });
    } catch (err) {
      if (err instanceof RateLimitedError) {
        this.setState({
          ...this.state,
          phase: "cooling_down",
          cooldownUntil: this.deps.now() + err.retryAfterSeconds * 1000,
          errorMessage: "The service is rate limited right now.",
        });
      } else {
        this.setState({
          ...this.state,
          phase: "error",
          errorMessage: err instanceof Error ? err.message : String(err),
        });
      }
    }
  }

  /** Record a verdict for the prediction currently on screen. */
  async sendFeedback(correct: boolean): Promise<void> {
    const prediction = this.state.lastPrediction;
    if (this.state.phase !== "showing_prediction" || prediction === null) return;
    if (this.state.feedbackPending) return;

    this.setState({ ...this.state, feedbackPending: true });
    try {
      await this.deps.api.sendFeedback(prediction.id, correct);
      this.setState({ ...this.state, phase: "feedback_sent", feedbackPending: false });
    } catch (err) {
      this.setState({
        ...this.state,
        phase: "error",
        feedbackPending: false,
        errorMessage: err instanceof Error ? err.message : String(err),
      });
    }
  }

  /**
   * Leave a terminal phase (result, thank-you, or error) for the next
   * headline. Lands in cooling_down while the window is still running,
   * otherwise straight back to idle.
   */
  reset(): void {
    if (this.state.phase === "awaiting_prediction") return;
    const blocked = cooldownActive(this.state, this.deps.now());
    this.setState({
      ...this.state,
      phase: blocked ? "cooling_down" : "idle",
      lastPrediction: null,
      errorMessage: null,
      feedbackPending: false,
    });
  }

  /** Clock tick: expire the cooldown and release cooling_down back to idle. */
  tick(): void {
    if (!cooldownActive(this.state, this.deps.now()) && this.state.cooldownUntil !== null) {
      this.setState({
        ...this.state,
        cooldownUntil: null,
        phase: this.state.phase === "cooling_down" ? "idle" : this.state.phase,
        errorMessage: this.state.phase === "cooling_down" ? null : this.state.errorMessage,
      });
    }
  }
}
