/** Token segments for rendering; classes come straight from the API's
 * token-index offsets, never from re-tokenization. */

import type { CandidateView } from "./types.js";

export interface Segment {
  index: number;
  text: string;
  classes: string[];
}

type Range = [number, number] | null;

export function tokenSegments(
  tokens: string[],
  ranges: { cls: string; range: Range }[],
): Segment[] {
  return tokens.map((text, index) => {
    const classes = ranges
      .filter(({ range }) => range !== null && range[0] <= index && index < range[1])
      .map(({ cls }) => cls);
    return { index, text, classes };
  });
}

export function sourceSegments(candidate: CandidateView): Segment[] {
  return tokenSegments(candidate.src_tokens, [
    { cls: "entity", range: candidate.highlights.src_entity },
  ]);
}

export function targetSegments(candidate: CandidateView): Segment[] {
  return tokenSegments(candidate.tgt_tokens, [
    { cls: "anchor", range: candidate.highlights.tgt_anchor },
    { cls: "span", range: candidate.highlights.tgt_span },
  ]);
}

/** Indices carrying a class; used by tests to compare against the payload. */
export function indicesWithClass(segments: Segment[], cls: string): number[] {
  return segments.filter((s) => s.classes.includes(cls)).map((s) => s.index);
}
