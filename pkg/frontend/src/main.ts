/** App bootstrap: wires the queue, outbox, dashboard, and keyboard keys. */

import { ApiClient } from "./api.js";
import { GUIDANCE, GUIDANCE_TITLE, VERDICT_HELP } from "./guidance.js";
import { LabelOutbox } from "./outbox.js";
import { ReviewQueue } from "./queue.js";
import { renderCandidate, renderConnection, renderStats } from "./render.js";

const api = new ApiClient("");
const outbox = new LabelOutbox(api, window.localStorage);
const annotator =
  window.localStorage.getItem("explmine.annotator") ??
  window.prompt("Annotator name:", "reviewer") ??
  "reviewer";
window.localStorage.setItem("explmine.annotator", annotator);
const queue = new ReviewQueue(api, outbox, annotator);

const root = document.body;

async function refreshStats(): Promise<void> {
  try {
    renderStats(root, await api.stats());
  } catch {
    // stats refresh failures are non-fatal; connection banner shows state
  }
  renderConnection(root, outbox.pending.length, navigator.onLine);
}

function refreshCandidate(): void {
  renderCandidate(root, queue.current);
  const positionEl = document.querySelector<HTMLElement>("#position");
  if (positionEl) positionEl.textContent = queue.position;
}

async function act(action: () => Promise<void>): Promise<void> {
  try {
    await action();
  } catch {
    renderConnection(root, outbox.pending.length, navigator.onLine);
  }
  refreshCandidate();
  await refreshStats();
}

function bindKeys(): void {
  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement) return;
    switch (event.key) {
      case "a":
        void act(() => queue.label("EXPLANATION"));
        break;
      case "r":
        void act(() => queue.label("NOT_EXPLANATION"));
        break;
      case "s":
        void act(() => queue.skip());
        break;
      case "ArrowRight":
        void act(() => queue.advance());
        break;
      case "ArrowLeft":
        void act(() => queue.back());
        break;
    }
  });
  document.querySelector("#btn-accept")?.addEventListener("click", () =>
    void act(() => queue.label("EXPLANATION")),
  );
  document.querySelector("#btn-reject")?.addEventListener("click", () =>
    void act(() => queue.label("NOT_EXPLANATION")),
  );
  document.querySelector("#btn-skip")?.addEventListener("click", () =>
    void act(() => queue.skip()),
  );
  document.querySelector("#btn-retry")?.addEventListener("click", () =>
    void act(async () => {
      await outbox.flush();
    }),
  );
}

function renderGuidance(): void {
  const title = document.querySelector<HTMLElement>("#guidance-title");
  if (title) title.textContent = GUIDANCE_TITLE;
  const list = document.querySelector<HTMLElement>("#guidance-list");
  if (list) {
    for (const item of GUIDANCE) {
      const li = document.createElement("li");
      li.textContent = item;
      list.appendChild(li);
    }
  }
  const help = document.querySelector<HTMLElement>("#verdict-help");
  if (help) help.textContent = VERDICT_HELP;
}

window.addEventListener("online", () =>
  void act(async () => {
    await outbox.flush();
  }),
);

async function start(): Promise<void> {
  renderGuidance();
  bindKeys();
  await outbox.flush();
  try {
    await queue.loadPage(0);
  } catch {
    const srcEl = document.querySelector<HTMLElement>("#src-sentence");
    if (srcEl) srcEl.textContent = "Cannot reach the review API. Is `explmine serve` running?";
  }
  refreshCandidate();
  await refreshStats();
  window.setInterval(() => void refreshStats(), 15_000);
}

void start();
