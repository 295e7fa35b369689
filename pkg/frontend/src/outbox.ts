/** Offline-safe label outbox.
 *
 * Every verdict click becomes one pending label with a client-generated
 * request id; the server deduplicates on that id, so flushing is safe to
 * retry any number of times. Pending labels persist across reloads through
 * the injected storage.
 */

import type { ApiClient } from "./api.js";
import type { LabelRequest, Verdict } from "./types.js";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export class MemoryStorage implements StorageLike {
  private map = new Map<string, string>();
  getItem(key: string): string | null {
    return this.map.has(key) ? (this.map.get(key) as string) : null;
  }
  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
  removeItem(key: string): void {
    this.map.delete(key);
  }
}

function newRequestId(): string {
  const cryptoObj = (globalThis as { crypto?: Crypto }).crypto;
  if (cryptoObj?.randomUUID) return cryptoObj.randomUUID();
  return `req-${Date.now()}-${Math.random().toString(36).slice(2, 10)}`;
}

export interface FlushResult {
  sent: number;
  remaining: number;
}

export class LabelOutbox {
  private queue: LabelRequest[];

  constructor(
    private api: ApiClient,
    private storage: StorageLike,
    private key = "explmine.outbox",
  ) {
    const raw = storage.getItem(key);
    this.queue = raw ? (JSON.parse(raw) as LabelRequest[]) : [];
  }

  get pending(): readonly LabelRequest[] {
    return this.queue;
  }

  private persist(): void {
    if (this.queue.length === 0) {
      this.storage.removeItem(this.key);
    } else {
      this.storage.setItem(this.key, JSON.stringify(this.queue));
    }
  }

  /** Queues exactly one label for the click; returns its request id. */
  enqueue(candidate_id: string, verdict: Verdict, annotator: string): LabelRequest {
    const label: LabelRequest = {
      candidate_id,
      verdict,
      annotator,
      request_id: newRequestId(),
    };
    this.queue.push(label);
    this.persist();
    return label;
  }

  /** Posts pending labels in order; stops at the first network failure. */
  async flush(): Promise<FlushResult> {
    let sent = 0;
    while (this.queue.length > 0) {
      const next = this.queue[0] as LabelRequest;
      try {
        await this.api.postLabel(next);
      } catch (err) {
        // leave the label queued; a later flush retries with the same id
        this.persist();
        return { sent, remaining: this.queue.length };
      }
      this.queue.shift();
      sent += 1;
    }
    this.persist();
    return { sent, remaining: 0 };
  }
}
