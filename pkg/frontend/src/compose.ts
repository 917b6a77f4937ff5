/** Draft state machine for the compose box.
 *
 * Keystrokes debounce into at most one in-flight check request; a newer
 * draft aborts the older request, and a response is applied only while
 * its text still equals the current draft, so highlights never lag the
 * text they annotate. Drafts are never persisted.
 */

import { ApiClient, type CheckResponse, type Strategy } from "./api.js";

export interface AcceptedSuggestion {
  before: string;
  after: string;
  strategy: Strategy;
}

export interface ComposeState {
  draft: string;
  strategy: Strategy;
  /** a check for the current draft is scheduled or in flight */
  pending: boolean;
  /** service output, only ever for the exact current draft */
  output: CheckResponse | null;
  /** banner text when the service is unreachable or erroring */
  error: string | null;
  lastAccepted: AcceptedSuggestion | null;
  canUndo: boolean;
}

export interface ComposeOptions {
  debounceMs?: number;
  strategy?: Strategy;
}

type Listener = (state: ComposeState) => void;

const DEFAULT_DEBOUNCE_MS = 300;

export class ComposeController {
  readonly debounceMs: number;

  private draft = "";
  private strategy: Strategy;
  private output: CheckResponse | null = null;
  private error: string | null = null;
  private lastAccepted: AcceptedSuggestion | null = null;
  private readonly history: string[] = [];

  private readonly listeners: Listener[] = [];
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;
  private seq = 0;

  constructor(
    private readonly api: ApiClient,
    options: ComposeOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? DEFAULT_DEBOUNCE_MS;
    this.strategy = options.strategy ?? "mask";
  }

  get state(): ComposeState {
    return {
      draft: this.draft,
      strategy: this.strategy,
      pending: this.timer !== null || this.inflight !== null,
      output: this.output,
      error: this.error,
      lastAccepted: this.lastAccepted,
      canUndo: this.history.length > 0,
    };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    listener(this.state);
    return () => {
      const i = this.listeners.indexOf(listener);
      if (i >= 0) this.listeners.splice(i, 1);
    };
  }

  setDraft(text: string): void {
    if (text === this.draft) return;
    this.draft = text;
    if (this.output !== null && this.output.original !== text) {
      this.output = null;
    }
    this.schedule();
    this.notify();
  }

  setStrategy(strategy: Strategy): void {
    if (strategy === this.strategy) return;
    this.strategy = strategy;
    this.schedule();
    this.notify();
  }

  /** Replace the draft with the service's rephrasing and re-check. */
  acceptSuggestion(): void {
    const output = this.output;
    if (output === null || !output.detected) return;
    this.history.push(this.draft);
    this.lastAccepted = {
      before: this.draft,
      after: output.eliminated,
      strategy: this.strategy,
    };
    this.draft = output.eliminated;
    this.output = null;
    this.checkNow();
    this.notify();
  }

  undo(): void {
    const prior = this.history.pop();
    if (prior === undefined) return;
    this.draft = prior;
    this.output = null;
    this.lastAccepted = null;
    this.checkNow();
    this.notify();
  }

  /** Skip the debounce and issue the check immediately. */
  checkNow(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    void this.issue();
  }

  dispose(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
    this.inflight?.abort();
    this.inflight = null;
    this.listeners.length = 0;
  }

  private schedule(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.issue();
    }, this.debounceMs);
  }

  private async issue(): Promise<void> {
    const seq = ++this.seq;
    const draft = this.draft;
    this.inflight?.abort();
    const abort = new AbortController();
    this.inflight = abort;
    try {
      const output = await this.api.check(draft, this.strategy, abort.signal);
      if (seq !== this.seq || draft !== this.draft) return; // stale
      this.output = output;
      this.error = null;
    } catch (err) {
      if (abort.signal.aborted) return; // superseded
      if (seq !== this.seq || draft !== this.draft) return;
      this.output = null;
      this.error = err instanceof Error ? err.message : String(err);
    } finally {
      if (this.inflight === abort) this.inflight = null;
      if (seq === this.seq) this.notify();
    }
  }

  private notify(): void {
    const state = this.state;
    for (const listener of [...this.listeners]) listener(state);
  }
}
