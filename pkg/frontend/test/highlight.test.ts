import { describe, expect, it } from "vitest";

import { indicesWithClass, sourceSegments, targetSegments } from "../src/highlight.js";
import { makeCandidate } from "./stub_server.js";

function rangeIndices(range: [number, number] | null): number[] {
  if (!range) return [];
  const out: number[] = [];
  for (let i = range[0]; i < range[1]; i++) out.push(i);
  return out;
}

describe("highlight segments", () => {
  it("source entity classes equal the payload range exactly", () => {
    const candidate = makeCandidate(0);
    const segments = sourceSegments(candidate);
    expect(indicesWithClass(segments, "entity")).toEqual(
      rangeIndices(candidate.highlights.src_entity),
    );
    expect(segments.map((s) => s.text)).toEqual(candidate.src_tokens);
  });

  it("target anchor and span classes equal the payload ranges exactly", () => {
    const candidate = makeCandidate(3);
    const segments = targetSegments(candidate);
    expect(indicesWithClass(segments, "anchor")).toEqual(
      rangeIndices(candidate.highlights.tgt_anchor),
    );
    expect(indicesWithClass(segments, "span")).toEqual(
      rangeIndices(candidate.highlights.tgt_span),
    );
  });

  it("holds for every candidate of a rendered page", () => {
    for (let i = 0; i < 20; i++) {
      const candidate = makeCandidate(i);
      expect(indicesWithClass(sourceSegments(candidate), "entity")).toEqual(
        rangeIndices(candidate.highlights.src_entity),
      );
      expect(indicesWithClass(targetSegments(candidate), "anchor")).toEqual(
        rangeIndices(candidate.highlights.tgt_anchor),
      );
      expect(indicesWithClass(targetSegments(candidate), "span")).toEqual(
        rangeIndices(candidate.highlights.tgt_span),
      );
    }
  });

  it("handles a null entity range", () => {
    const candidate = makeCandidate(0);
    candidate.highlights.src_entity = null;
    expect(indicesWithClass(sourceSegments(candidate), "entity")).toEqual([]);
  });

  it("never marks tokens outside the sentence", () => {
    const candidate = makeCandidate(0);
    const segments = targetSegments(candidate);
    expect(segments).toHaveLength(candidate.tgt_tokens.length);
    for (const segment of segments) {
      expect(segment.index).toBeGreaterThanOrEqual(0);
      expect(segment.index).toBeLessThan(candidate.tgt_tokens.length);
    }
  });
});
