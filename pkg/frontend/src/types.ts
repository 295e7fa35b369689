/** Payload shapes of the /api/v1 review endpoints. */

export type Verdict = "EXPLANATION" | "NOT_EXPLANATION";

export interface Highlights {
  src_entity: [number, number] | null;
  tgt_anchor: [number, number];
  tgt_span: [number, number];
}

export interface CandidateView {
  candidate_id: string;
  pair_id: number;
  stage: string;
  k: number;
  m: number;
  span_start: number;
  span_len: number;
  ne_span: [number, number] | null;
  wiki_decision: string | null;
  src_tokens: string[];
  tgt_tokens: string[];
  highlights: Highlights;
  current_verdict: Verdict | null;
}

export interface CandidatePage {
  total: number;
  offset: number;
  limit: number;
  items: CandidateView[];
}

export interface Stats {
  total_candidates: number;
  stage_counts: Record<string, number>;
  labels: {
    labeled: number;
    explanation: number;
    not_explanation: number;
    total_records: number;
  };
  retention: number;
}

export interface LabelRequest {
  candidate_id: string;
  verdict: Verdict;
  annotator: string;
  request_id: string;
}
