// Pure presentation: UiState in, HTML string out. No DOM access here, so the
// whole surface is assertable in plain node tests.

import { UiState, cooldownActive } from "./state.js";

export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function cooldownRemainingSeconds(state: UiState, now: number): number {
  if (state.cooldownUntil === null) return 0;
  return Math.max(0, Math.ceil((state.cooldownUntil - now) / 1000));
}

/** The submit control is locked while a request runs or the window cools. */
export function submitDisabled(state: UiState, now: number): boolean {
  if (state.phase === "awaiting_prediction") return true;
  if (state.phase === "idle") return cooldownActive(state, now);
  return true; // non-idle phases use the "try another" control instead
}

function verdictHtml(state: UiState): string {
  const p = state.lastPrediction;
  if (p === null) return "";
  const clickbait = p.label === "clickbait";
  const pct = (p.score * 100).toFixed(1);
  const title = clickbait ? "Clickbait" : "Not clickbait";
  return (
    `<p class="verdict ${clickbait ? "clickbait" : "non-clickbait"}">` +
    `${title} &mdash; ${pct}% clickbait score</p>`
  );
}

function countdownHtml(state: UiState, now: number): string {
  const remaining = cooldownRemainingSeconds(state, now);
  if (remaining === 0 || state.phase === "awaiting_prediction") return "";
  return (
    `<p class="countdown">Next prediction available in ` +
    `<span data-countdown>${remaining}</span>&nbsp;s</p>`
  );
}

export function render(state: UiState, now: number): string {
  const parts: string[] = [];

  switch (state.phase) {
    case "idle":
      parts.push(`<p class="hint">Paste a headline and check it.</p>`);
      break;
    case "awaiting_prediction":
      parts.push(`<p class="busy" role="status">Checking the headline&hellip;</p>`);
      break;
    case "showing_prediction":
      parts.push(verdictHtml(state));
      parts.push(
        `<div class="feedback"><span>Was this right?</span>` +
          `<button data-action="feedback-correct"${state.feedbackPending ? " disabled" : ""}>Correct</button>` +
          `<button data-action="feedback-incorrect"${state.feedbackPending ? " disabled" : ""}>Wrong</button>` +
          `</div>`,
      );
      parts.push(`<button data-action="reset" class="again">Try another headline</button>`);
      break;
    case "feedback_sent":
      parts.push(verdictHtml(state));
      parts.push(`<p class="thanks">Thanks, your feedback was recorded.</p>`);
      parts.push(`<button data-action="reset" class="again">Try another headline</button>`);
      break;
    case "error":
      parts.push(
        `<div class="error" role="alert">` +
          `<p>${escapeHtml(state.errorMessage ?? "Something went wrong.")}</p>` +
          `<button data-action="reset">Dismiss</button>` +
          `</div>`,
      );
      break;
    case "cooling_down":
      if (state.errorMessage !== null) {
        parts.push(`<p class="error-note">${escapeHtml(state.errorMessage)}</p>`);
      }
      break;
  }

  parts.push(countdownHtml(state, now));
  return parts.filter((p) => p !== "").join("\n");
}
