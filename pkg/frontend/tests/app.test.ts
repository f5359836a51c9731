import { describe, expect, it } from "vitest";

import { ApiError, PredictApi, PredictionResult, RateLimitedError } from "../src/api.js";
import { App, COOLDOWN_MS, Phase, UiState } from "../src/state.js";
import { render } from "../src/view.js";

class FakeClock {
  constructor(public t = 0) {}
  now = () => this.t;
  advance(ms: number): void {
    this.t += ms;
  }
}

class FakeApi implements PredictApi {
  predictCalls: string[] = [];
  feedbackCalls: Array<{ id: string; correct: boolean }> = [];
  // predict() records the call before running the impl, hence the -1
  predictImpl: (text: string) => Promise<PredictionResult> = async () => ({
    id: `id-${this.predictCalls.length - 1}`,
    score: 0.97,
    label: "clickbait",
  });
  feedbackImpl: () => Promise<void> = async () => {};

  predict(text: string): Promise<PredictionResult> {
    this.predictCalls.push(text);
    return this.predictImpl(text);
  }

  sendFeedback(id: string, correct: boolean): Promise<void> {
    this.feedbackCalls.push({ id, correct });
    return this.feedbackImpl();
  }
}

function harness() {
  const clock = new FakeClock();
  const api = new FakeApi();
  const phases: Phase[] = [];
  const app = new App({ api, now: clock.now, onChange: (s) => phases.push(s.phase) });
  return { clock, api, app, phases };
}

/** What main.ts does on a form submit: leave a terminal screen, then submit. */
async function userSubmits(app: App, text: string): Promise<void> {
  const phase = app.getState().phase;
  if (phase === "showing_prediction" || phase === "feedback_sent" || phase === "error") {
    app.reset();
  }
  await app.submitHeadline(text);
}

function deferred<T>() {
  let resolve!: (value: T) => void;
  let reject!: (reason?: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

describe("submit flow", () => {
  it("walks idle -> awaiting_prediction -> showing_prediction", async () => {
    const { app, api, phases } = harness();
    await app.submitHeadline("wah kamu harus tahu");
    expect(phases).toEqual(["awaiting_prediction", "showing_prediction"]);
    expect(api.predictCalls).toEqual(["wah kamu harus tahu"]);
    expect(app.getState().lastPrediction).toEqual({ id: "id-0", score: 0.97, label: "clickbait" });
  });

  it("trims the headline and sends nothing for empty input", async () => {
    const { app, api } = harness();
    await app.submitHeadline("   ");
    expect(api.predictCalls).toEqual([]);
    expect(app.getState().phase).toBe("idle");
    await app.submitHeadline("  judul berita  ");
    expect(api.predictCalls).toEqual(["judul berita"]);
  });

  it("allows only one in-flight request", async () => {
    const { app, api } = harness();
    const gate = deferred<PredictionResult>();
    api.predictImpl = () => gate.promise;
    const first = app.submitHeadline("satu");
    expect(app.getState().phase).toBe("awaiting_prediction");
    await app.submitHeadline("dua"); // ignored: a request is already running
    expect(api.predictCalls).toEqual(["satu"]);
    gate.resolve({ id: "id-0", score: 0.5, label: "clickbait" });
    await first;
    expect(app.getState().phase).toBe("showing_prediction");
  });

  it("maps a network failure to the error phase and recovers via reset", async () => {
    const { app, api } = harness();
    api.predictImpl = async () => {
      throw new ApiError(503, "no model is loaded");
    };
    await app.submitHeadline("wah");
    expect(app.getState().phase).toBe("error");
    expect(app.getState().errorMessage).toBe("no model is loaded");
    app.reset();
    expect(app.getState().phase).toBe("idle");
  });
});

describe("client-side cooldown", () => {
  it("never sends more than one /predict per 60 s", async () => {
    const { app, api, clock } = harness();
    await userSubmits(app, "pertama");
    expect(api.predictCalls).toHaveLength(1);

    for (const t of [1_000, 10_000, 30_000, 59_999]) {
      clock.t = t;
      app.tick();
      await userSubmits(app, "kedua");
      expect(api.predictCalls).toHaveLength(1); // blocked client-side
    }

    clock.t = COOLDOWN_MS;
    app.tick();
    expect(app.getState().phase).toBe("idle");
    await userSubmits(app, "kedua");
    expect(api.predictCalls).toHaveLength(2);
  });

  it("shows a visible countdown while blocked", async () => {
    const { app, clock } = harness();
    await userSubmits(app, "pertama");
    clock.t = 14_000;
    await userSubmits(app, "kedua");
    const state = app.getState();
    expect(state.phase).toBe("cooling_down");
    expect(render(state, clock.t)).toContain("<span data-countdown>46</span>");
  });

  it("counts the window from the successful response", async () => {
    const { app, api, clock } = harness();
    api.predictImpl = async () => {
      clock.advance(5_000); // server takes five seconds
      return { id: "id-0", score: 0.9, label: "clickbait" };
    };
    await app.submitHeadline("lambat");
    expect(app.getState().cooldownUntil).toBe(5_000 + COOLDOWN_MS);
  });

  it("releases cooling_down back to idle when the window expires", async () => {
    const { app, clock } = harness();
    await userSubmits(app, "pertama");
    clock.t = 30_000;
    await userSubmits(app, "kedua");
    expect(app.getState().phase).toBe("cooling_down");
    clock.t = 59_000;
    app.tick();
    expect(app.getState().phase).toBe("cooling_down");
    clock.t = 61_000;
    app.tick();
    expect(app.getState().phase).toBe("idle");
    expect(app.getState().cooldownUntil).toBeNull();
  });
});

describe("429 handling", () => {
  it("enters cooling_down with the server's Retry-After and renders it", async () => {
    const { app, api, clock } = harness();
    api.predictImpl = async () => {
      throw new RateLimitedError(17);
    };
    await app.submitHeadline("wah");
    const state = app.getState();
    expect(state.phase).toBe("cooling_down");
    expect(state.cooldownUntil).toBe(17_000);
    const html = render(state, clock.t);
    expect(html).toContain("<span data-countdown>17</span>");
    expect(html).toContain("rate limited");
  });

  it("blocks further submits until the server window passes", async () => {
    const { app, api, clock } = harness();
    api.predictImpl = async () => {
      throw new RateLimitedError(30);
    };
    await app.submitHeadline("wah");
    expect(api.predictCalls).toHaveLength(1);
    clock.t = 29_000;
    await userSubmits(app, "lagi");
    expect(api.predictCalls).toHaveLength(1);
    api.predictImpl = async () => ({ id: "id-1", score: 0.4, label: "non_clickbait" });
    clock.t = 30_000;
    app.tick();
    await userSubmits(app, "lagi");
    expect(api.predictCalls).toHaveLength(2);
  });
});

describe("feedback", () => {
  async function predicted() {
    const h = harness();
    await h.app.submitHeadline("wah kamu");
    return h;
  }

  it("appears only after a successful prediction and disappears after one verdict", async () => {
    const { app, clock } = await predicted();
    expect(render(app.getState(), clock.t)).toContain('data-action="feedback-correct"');
    await app.sendFeedback(true);
    expect(app.getState().phase).toBe("feedback_sent");
    const after = render(app.getState(), clock.t);
    expect(after).not.toContain('data-action="feedback-correct"');
    expect(after).not.toContain('data-action="feedback-incorrect"');
    expect(after).toContain("feedback was recorded");
  });

  it("carries the id of the most recent prediction", async () => {
    const { app, api, clock } = await predicted();
    clock.t = COOLDOWN_MS;
    app.tick();
    await userSubmits(app, "judul kedua");
    await app.sendFeedback(false);
    expect(api.feedbackCalls).toEqual([{ id: "id-1", correct: false }]);
  });

  it("ignores a second verdict", async () => {
    const { app, api } = await predicted();
    await app.sendFeedback(true);
    await app.sendFeedback(false); // buttons are gone; a stray call is a no-op
    expect(api.feedbackCalls).toEqual([{ id: "id-0", correct: true }]);
  });

  it("ignores feedback without a prediction", async () => {
    const { app, api } = harness();
    await app.sendFeedback(true);
    expect(api.feedbackCalls).toEqual([]);
    expect(app.getState().phase).toBe("idle");
  });

  it("allows only one in-flight feedback request", async () => {
    const { app, api } = await predicted();
    const gate = deferred<void>();
    api.feedbackImpl = () => gate.promise;
    const first = app.sendFeedback(true);
    await app.sendFeedback(false);
    expect(api.feedbackCalls).toHaveLength(1);
    gate.resolve();
    await first;
    expect(app.getState().phase).toBe("feedback_sent");
  });

  it("surfaces a 409 as a dismissable error", async () => {
    const { app, api, clock } = await predicted();
    api.feedbackImpl = async () => {
      throw new ApiError(409, "feedback for this prediction was already recorded");
    };
    await app.sendFeedback(true);
    const state = app.getState();
    expect(state.phase).toBe("error");
    expect(render(state, clock.t)).toContain("already recorded");
    app.reset();
    // the cooldown from the prediction is still running, so reset parks in cooling_down
    expect(app.getState().phase).toBe("cooling_down");
    clock.t = COOLDOWN_MS + 1;
    app.tick();
    expect(app.getState().phase).toBe("idle");
  });
});

describe("state invariants", () => {
  it("every showing_prediction was immediately preceded by awaiting_prediction", async () => {
    const { clock, api } = harness();
    // Track phase *transitions*; setState may re-emit the same phase (e.g.
    // when tick clears an expired cooldownUntil without changing the screen).
    const transitions: Phase[] = ["idle"];
    const app = new App({
      api,
      now: clock.now,
      onChange: (s: UiState) => {
        if (s.phase !== transitions[transitions.length - 1]) transitions.push(s.phase);
      },
    });

    await app.submitHeadline("a");
    clock.t = COOLDOWN_MS;
    app.tick();
    await userSubmits(app, "b");
    await app.sendFeedback(true);
    clock.t = 2 * COOLDOWN_MS;
    app.tick();
    await userSubmits(app, "c");

    transitions.forEach((phase, i) => {
      if (phase === "showing_prediction") {
        expect(transitions[i - 1]).toBe("awaiting_prediction");
      }
    });
    expect(transitions.filter((p) => p === "showing_prediction")).toHaveLength(3);
  });
});
