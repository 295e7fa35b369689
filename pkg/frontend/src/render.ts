/** DOM rendering; the only module besides main.ts that touches document. */

import { dashboardView } from "./dashboard.js";
import { sourceSegments, targetSegments, type Segment } from "./highlight.js";
import type { CandidateView, Stats } from "./types.js";

function renderTokens(container: HTMLElement, segments: Segment[]): void {
  container.textContent = "";
  for (const segment of segments) {
    const span = document.createElement("span");
    span.textContent = segment.text;
    span.className = ["token", ...segment.classes].join(" ");
    span.dataset.index = String(segment.index);
    container.appendChild(span);
    container.appendChild(document.createTextNode(" "));
  }
}

export function renderCandidate(root: HTMLElement, candidate: CandidateView | null): void {
  const srcEl = root.querySelector<HTMLElement>("#src-sentence");
  const tgtEl = root.querySelector<HTMLElement>("#tgt-sentence");
  const badgeEl = root.querySelector<HTMLElement>("#decision-badge");
  const verdictEl = root.querySelector<HTMLElement>("#current-verdict");
  if (!srcEl || !tgtEl || !badgeEl || !verdictEl) return;
  if (!candidate) {
    srcEl.textContent = "No candidates in this stage.";
    tgtEl.textContent = "";
    badgeEl.textContent = "";
    verdictEl.textContent = "";
    return;
  }
  renderTokens(srcEl, sourceSegments(candidate));
  renderTokens(tgtEl, targetSegments(candidate));
  badgeEl.textContent = candidate.wiki_decision ?? "";
  badgeEl.className = `badge ${candidate.wiki_decision?.toLowerCase() ?? ""}`;
  verdictEl.textContent = candidate.current_verdict ?? "unlabeled";
  verdictEl.className = `verdict ${candidate.current_verdict?.toLowerCase() ?? "unlabeled"}`;
}

export function renderStats(root: HTMLElement, stats: Stats): void {
  const view = dashboardView(stats);
  const set = (id: string, text: string) => {
    const el = root.querySelector<HTMLElement>(`#${id}`);
    if (el) el.textContent = text;
  };
  set("stat-labeled", view.labeledOfTotal);
  set("stat-accepted", String(view.accepted));
  set("stat-percent", view.acceptPercent);
  const funnelEl = root.querySelector<HTMLElement>("#stat-funnel");
  if (funnelEl) {
    funnelEl.textContent = view.funnel.map((f) => `${f.stage}: ${f.count}`).join(" → ");
  }
}

export function renderConnection(root: HTMLElement, pending: number, online: boolean): void {
  const el = root.querySelector<HTMLElement>("#connection");
  if (!el) return;
  if (pending === 0) {
    el.textContent = online ? "all labels saved" : "offline";
    el.className = online ? "conn ok" : "conn offline";
  } else {
    el.textContent = `${pending} label(s) queued ${online ? "(retrying)" : "(offline)"}`;
    el.className = "conn pending";
  }
}
