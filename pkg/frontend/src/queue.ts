/** Candidate queue state: paging, advancing, and optimistic verdicts.
 *
 * A verdict enqueues exactly one label (one request id) and tries to flush;
 * skip only advances and never persists anything.
 */

import type { ApiClient } from "./api.js";
import type { LabelOutbox } from "./outbox.js";
import type { CandidateView, Verdict } from "./types.js";

export class ReviewQueue {
  items: CandidateView[] = [];
  total = 0;
  offset = 0;
  index = 0;
  lastError: string | null = null;

  constructor(
    private api: ApiClient,
    private outbox: LabelOutbox,
    private annotator: string,
    private stage: string = "WIKI",
    private pageSize: number = 20,
  ) {}

  get current(): CandidateView | null {
    return this.items[this.index] ?? null;
  }

  get position(): string {
    if (this.total === 0) return "0/0";
    return `${this.offset + this.index + 1}/${this.total}`;
  }

  async loadPage(offset: number): Promise<void> {
    try {
      const page = await this.api.candidates(this.stage, offset, this.pageSize);
      this.items = page.items;
      this.total = page.total;
      this.offset = offset;
      this.index = 0;
      this.lastError = null;
    } catch (err) {
      this.lastError = err instanceof Error ? err.message : String(err);
      throw err;
    }
  }

  /** Queue one label for the current candidate, flush, and advance. */
  async label(verdict: Verdict): Promise<void> {
    const candidate = this.current;
    if (!candidate) return;
    this.outbox.enqueue(candidate.candidate_id, verdict, this.annotator);
    candidate.current_verdict = verdict; // optimistic; /stats reconciles
    await this.outbox.flush();
    await this.advance();
  }

  /** UI-only: moves on without persisting anything. */
  async skip(): Promise<void> {
    await this.advance();
  }

  async advance(): Promise<void> {
    if (this.index + 1 < this.items.length) {
      this.index += 1;
      return;
    }
    const nextOffset = this.offset + this.items.length;
    if (nextOffset < this.total) {
      await this.loadPage(nextOffset);
    }
  }

  async back(): Promise<void> {
    if (this.index > 0) {
      this.index -= 1;
      return;
    }
    if (this.offset > 0) {
      const previousOffset = Math.max(0, this.offset - this.pageSize);
      await this.loadPage(previousOffset);
      this.index = Math.max(0, this.items.length - 1);
    }
  }
}
