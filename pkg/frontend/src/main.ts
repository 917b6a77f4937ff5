/** Page bootstrap. The service URL resolves, in order, from the
 * `?service=` query parameter, a `DAREKIT_SERVICE_URL` global set by the
 * hosting page, then same-origin. */

import { ApiClient } from "./api.js";
import { ComposeController } from "./compose.js";
import { bindCompose, renderTaxonomyPanel, type ComposeElements } from "./render.js";
import { TaxonomyStore } from "./taxonomy.js";

declare global {
  interface Window {
    DAREKIT_SERVICE_URL?: string;
  }
}

function serviceUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  if (fromQuery !== null && fromQuery !== "") return fromQuery;
  if (window.DAREKIT_SERVICE_URL) return window.DAREKIT_SERVICE_URL;
  return window.location.origin;
}

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing #${id}`);
  return el as T;
}

export function start(): void {
  const api = new ApiClient(serviceUrl());
  const controller = new ComposeController(api);
  const taxonomy = new TaxonomyStore();

  const elements: ComposeElements = {
    input: byId<HTMLTextAreaElement>("draft"),
    preview: byId("preview"),
    badges: byId("badges"),
    status: byId("status"),
    banner: byId("banner"),
    accept: byId<HTMLButtonElement>("accept"),
    undo: byId<HTMLButtonElement>("undo"),
    diff: byId("diff"),
    strategy: byId<HTMLSelectElement>("strategy"),
  };

  bindCompose(controller, elements, taxonomy);
  const panel = byId("taxonomy");
  taxonomy.subscribe((state) => renderTaxonomyPanel(panel, state));
  void taxonomy.load(api);
}
