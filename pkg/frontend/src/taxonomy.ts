/** One-shot taxonomy fetch with an offline placeholder state. Badge
 * names and tooltips fall back to raw attribute ids until it loads. */

import type { ApiClient, TaxonomyLeaf, TaxonomyResponse } from "./api.js";

export type TaxonomyState =
  | { status: "loading" }
  | { status: "ready"; taxonomy: TaxonomyResponse }
  | { status: "offline" };

type Listener = (state: TaxonomyState) => void;

export class TaxonomyStore {
  private current: TaxonomyState = { status: "loading" };
  private readonly leaves = new Map<string, TaxonomyLeaf>();
  private readonly listeners: Listener[] = [];
  private started = false;

  get state(): TaxonomyState {
    return this.current;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    listener(this.current);
    return () => {
      const i = this.listeners.indexOf(listener);
      if (i >= 0) this.listeners.splice(i, 1);
    };
  }

  async load(api: ApiClient): Promise<void> {
    if (this.started) return;
    this.started = true;
    try {
      const taxonomy = await api.taxonomy();
      for (const branch of taxonomy.branches) {
        for (const leaf of branch.attributes) {
          this.leaves.set(leaf.id, leaf);
        }
      }
      this.current = { status: "ready", taxonomy };
    } catch {
      this.current = { status: "offline" };
    }
    for (const listener of [...this.listeners]) listener(this.current);
  }

  /** Display info for an attribute id, id-as-name when not loaded. */
  leaf(attributeId: string): TaxonomyLeaf {
    return (
      this.leaves.get(attributeId) ?? {
        id: attributeId,
        name: attributeId,
        description: "",
      }
    );
  }
}
