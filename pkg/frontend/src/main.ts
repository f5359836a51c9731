// DOM glue: binds the static form to the App state machine and repaints the
// status region on every change plus a coarse ticker for the countdown.

import { ApiClient } from "./api.js";
import { App } from "./state.js";
import { render, submitDisabled } from "./view.js";

declare global {
  interface Window {
    __CBD_API_BASE__?: string;
  }
}

const form = document.getElementById("headline-form") as HTMLFormElement;
const input = document.getElementById("headline") as HTMLInputElement;
const submit = document.getElementById("submit") as HTMLButtonElement;
const status = document.getElementById("status") as HTMLDivElement;

const api = new ApiClient(window.__CBD_API_BASE__ ?? "");
const app = new App({ api, now: () => Date.now(), onChange: paint });

function paint(): void {
  const now = Date.now();
  const state = app.getState();
  status.innerHTML = render(state, now);
  submit.disabled = submitDisabled(state, now) || input.value.trim() === "";
}

form.addEventListener("submit", (event) => {
  event.preventDefault();
  const state = app.getState();
  // leaving a result/thank-you/error screen for a fresh headline
  if (state.phase === "showing_prediction" || state.phase === "feedback_sent" || state.phase === "error") {
    app.reset();
  }
  void app.submitHeadline(input.value);
});

status.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest("[data-action]");
  if (!(target instanceof HTMLElement)) return;
  switch (target.dataset.action) {
    case "feedback-correct":
      void app.sendFeedback(true);
      break;
    case "feedback-incorrect":
      void app.sendFeedback(false);
      break;
    case "reset":
      app.reset();
      input.value = "";
      input.focus();
      break;
  }
});

input.addEventListener("input", paint);

// drive the countdown and release expired cooldowns
setInterval(() => {
  app.tick();
  paint();
}, 250);

paint();
