/** Pure span geometry: turn service spans into disjoint draft segments. */

import type { WireSpan } from "./api.js";

export interface HighlightRegion {
  start: number;
  end: number;
  /** attribute ids plus "profanity", sorted, deduplicated */
  tags: string[];
}

export interface Segment {
  text: string;
  region: HighlightRegion | null;
}

/** Collapse overlapping spans into disjoint regions. Touching spans stay
 * separate; only a true overlap merges, matching the service's revealed
 * form. */
export function mergeSpans(spans: readonly WireSpan[]): HighlightRegion[] {
  const sorted = [...spans].sort((a, b) => a.start - b.start || a.end - b.end);
  const regions: HighlightRegion[] = [];
  for (const span of sorted) {
    const tag = span.attribute ?? "profanity";
    const last = regions[regions.length - 1];
    if (last !== undefined && span.start < last.end) {
      last.end = Math.max(last.end, span.end);
      if (!last.tags.includes(tag)) last.tags.push(tag);
    } else {
      regions.push({ start: span.start, end: span.end, tags: [tag] });
    }
  }
  for (const region of regions) region.tags.sort();
  return regions;
}

/** Split the draft into plain and highlighted segments covering it
 * exactly; concatenating segment texts reproduces the draft. */
export function buildSegments(
  draft: string,
  spans: readonly WireSpan[],
): Segment[] {
  const segments: Segment[] = [];
  let cursor = 0;
  for (const region of mergeSpans(spans)) {
    if (region.start > cursor) {
      segments.push({ text: draft.slice(cursor, region.start), region: null });
    }
    segments.push({ text: draft.slice(region.start, region.end), region });
    cursor = region.end;
  }
  if (cursor < draft.length) {
    segments.push({ text: draft.slice(cursor), region: null });
  }
  return segments;
}
