/** DOM renderers. All text lands via textContent, never innerHTML, so
 * the draft cannot inject markup into its own preview. */

import type { WireLabel, WireSpan } from "./api.js";
import type { ComposeController, ComposeState } from "./compose.js";
import { buildSegments } from "./segments.js";
import type { TaxonomyState, TaxonomyStore } from "./taxonomy.js";

export interface ComposeElements {
  input: HTMLTextAreaElement;
  preview: HTMLElement;
  badges: HTMLElement;
  status: HTMLElement;
  banner: HTMLElement;
  accept: HTMLButtonElement;
  undo: HTMLButtonElement;
  diff: HTMLElement;
  strategy: HTMLSelectElement;
}

export function renderPreview(
  el: HTMLElement,
  draft: string,
  spans: readonly WireSpan[],
): void {
  el.replaceChildren();
  for (const segment of buildSegments(draft, spans)) {
    if (segment.region === null) {
      el.append(document.createTextNode(segment.text));
    } else {
      const mark = document.createElement("mark");
      mark.className = "hl";
      mark.title = segment.region.tags.join(", ");
      mark.textContent = segment.text;
      el.append(mark);
    }
  }
}

export function renderBadges(
  el: HTMLElement,
  labels: readonly WireLabel[],
  taxonomy: TaxonomyStore,
): void {
  el.replaceChildren();
  for (const label of labels) {
    const leaf = taxonomy.leaf(label.attribute);
    const badge = document.createElement("span");
    badge.className = "badge";
    badge.dataset["attribute"] = label.attribute;
    badge.title = leaf.description;
    badge.textContent = leaf.name;
    el.append(badge);
  }
}

export function renderTaxonomyPanel(el: HTMLElement, state: TaxonomyState): void {
  el.replaceChildren();
  if (state.status === "loading") {
    el.textContent = "loading attribute taxonomy…";
    return;
  }
  if (state.status === "offline") {
    el.textContent = "attribute taxonomy unavailable (service offline)";
    return;
  }
  const caption = document.createElement("p");
  caption.className = "tax-root";
  caption.textContent = state.taxonomy.root;
  el.append(caption);
  for (const branch of state.taxonomy.branches) {
    const group = document.createElement("section");
    group.className = "tax-branch";
    const heading = document.createElement("h3");
    heading.textContent = branch.name.replace(/_/g, " ");
    group.append(heading);
    const list = document.createElement("ul");
    for (const leaf of branch.attributes) {
      const item = document.createElement("li");
      item.className = "tax-leaf";
      item.title = leaf.description;
      item.textContent = leaf.name;
      list.append(item);
    }
    group.append(list);
    el.append(group);
  }
}

function renderState(
  state: ComposeState,
  el: ComposeElements,
  taxonomy: TaxonomyStore,
): void {
  if (el.input.value !== state.draft) el.input.value = state.draft;

  const output = state.output;
  renderPreview(el.preview, state.draft, output?.spans ?? []);
  renderBadges(el.badges, output?.labels ?? [], taxonomy);

  if (state.pending) {
    el.status.textContent = "checking…";
  } else if (output === null) {
    el.status.textContent = "";
  } else if (output.detected) {
    el.status.textContent = "flagged";
  } else {
    el.status.textContent = "no issues";
  }

  el.banner.hidden = state.error === null;
  el.banner.textContent =
    state.error === null ? "" : `service unreachable: ${state.error}`;

  el.accept.disabled = !(output?.detected ?? false);
  el.undo.disabled = !state.canUndo;

  el.diff.replaceChildren();
  if (state.lastAccepted !== null) {
    const before = document.createElement("del");
    before.textContent = state.lastAccepted.before;
    const after = document.createElement("ins");
    after.textContent = state.lastAccepted.after;
    el.diff.append(before, document.createTextNode(" "), after);
  }
}

/** Wire DOM events to the controller and subscribe the renderer. */
export function bindCompose(
  controller: ComposeController,
  el: ComposeElements,
  taxonomy: TaxonomyStore,
): () => void {
  el.input.addEventListener("input", () => controller.setDraft(el.input.value));
  el.strategy.addEventListener("change", () => {
    const value = el.strategy.value;
    if (value === "mask" || value === "remove" || value === "placeholder") {
      controller.setStrategy(value);
    }
  });
  el.accept.addEventListener("click", () => controller.acceptSuggestion());
  el.undo.addEventListener("click", () => controller.undo());
  return controller.subscribe((state) => renderState(state, el, taxonomy));
}
