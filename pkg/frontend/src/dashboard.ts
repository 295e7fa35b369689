/** Progress dashboard view-model.
 *
 * Every number shown is taken from the /stats payload; this module only
 * formats, it never recomputes a metric.
 */

import type { Stats } from "./types.js";

export interface DashboardView {
  labeled: number;
  totalCandidates: number;
  labeledOfTotal: string;
  accepted: number;
  acceptPercent: string;
  funnel: { stage: string; count: number }[];
}

const FUNNEL_ORDER = ["rarity", "span", "ner", "wiki"];

export function dashboardView(stats: Stats): DashboardView {
  const funnel = Object.entries(stats.stage_counts)
    .map(([stage, count]) => ({ stage, count }))
    .sort(
      (a, b) =>
        (FUNNEL_ORDER.indexOf(a.stage) + 1 || 99) - (FUNNEL_ORDER.indexOf(b.stage) + 1 || 99),
    );
  return {
    labeled: stats.labels.labeled,
    totalCandidates: stats.total_candidates,
    labeledOfTotal: `${stats.labels.labeled}/${stats.total_candidates}`,
    accepted: stats.labels.explanation,
    // stats.retention is already 0 when nothing is labeled
    acceptPercent: `${(stats.retention * 100).toFixed(2)}%`,
    funnel,
  };
}
