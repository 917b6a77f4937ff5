import { afterEach, beforeEach, describe, expect, test } from "vitest";

import { ApiClient } from "../src/api.js";
import { ComposeController, type ComposeState } from "../src/compose.js";
import { mergeSpans } from "../src/segments.js";
import { startStub, type StubServer } from "./stub_server.js";

const LOCATION_ROW = "fucking china attacked github";

let stub: StubServer;
let controller: ComposeController | null = null;

beforeEach(async () => {
  stub = await startStub();
});

afterEach(async () => {
  controller?.dispose();
  controller = null;
  await stub.close();
});

function make(debounceMs: number): {
  controller: ComposeController;
  states: ComposeState[];
} {
  controller = new ComposeController(new ApiClient(stub.url), { debounceMs });
  const states: ComposeState[] = [];
  controller.subscribe((state) => states.push(state));
  return { controller, states };
}

async function until(
  predicate: () => boolean,
  deadlineMs: number,
): Promise<boolean> {
  const deadline = Date.now() + deadlineMs;
  while (Date.now() < deadline) {
    if (predicate()) return true;
    await new Promise((r) => setTimeout(r, 5));
  }
  return predicate();
}

async function type(c: ComposeController, text: string, pauseMs: number) {
  for (let i = 1; i <= text.length; i++) {
    c.setDraft(text.slice(0, i));
    await new Promise((r) => setTimeout(r, pauseMs));
  }
}

describe("live check", () => {
  test("typing coalesces into one request and two highlight regions", async () => {
    const { controller: c } = make(120);
    await type(c, LOCATION_ROW, 5);
    const typed = Date.now();

    const settled = await until(
      () => c.state.output !== null,
      2 * c.debounceMs,
    );
    expect(settled).toBe(true);
    expect(Date.now() - typed).toBeLessThanOrEqual(2 * c.debounceMs);

    expect(stub.served).toEqual([{ text: LOCATION_ROW, strategy: "mask" }]);
    const output = c.state.output!;
    expect(output.detected).toBe(true);
    expect(mergeSpans(output.spans)).toHaveLength(2);
    expect(output.labels.map((l) => l.attribute)).toEqual(["location"]);
  });

  test("clean draft yields no spans and no labels", async () => {
    const { controller: c } = make(40);
    c.setDraft("hello world");
    await until(() => c.state.output !== null, 1000);
    expect(c.state.output!.detected).toBe(false);
    expect(c.state.output!.spans).toEqual([]);
  });

  test("output always matches the current draft", async () => {
    const { controller: c, states } = make(40);
    await type(c, LOCATION_ROW, 15);
    await until(() => c.state.output !== null && !c.state.pending, 1000);
    for (const state of states) {
      if (state.output !== null) {
        expect(state.output.original).toBe(state.draft);
      }
    }
  });

  test("service unreachable sets a banner error and editing continues", async () => {
    await stub.close();
    const dead = await startStub();
    await dead.close();
    const c = new ComposeController(new ApiClient(dead.url), { debounceMs: 20 });
    controller = c;
    c.setDraft("anything");
    await until(() => c.state.error !== null, 2000);
    expect(c.state.error).not.toBeNull();
    expect(c.state.output).toBeNull();
    c.setDraft("still editable");
    expect(c.state.draft).toBe("still editable");
    stub = await startStub(); // afterEach closes it
  });
});

describe("stale responses", () => {
  test("a delayed response for a superseded draft is never applied", async () => {
    const { controller: c, states } = make(40);
    stub.delays.push(300, 0);

    c.setDraft(LOCATION_ROW);
    await until(() => stub.served.length === 1, 1000); // slow request issued
    c.setDraft("hello world");
    await until(() => stub.served.length === 2 && c.state.output !== null, 1000);

    expect(c.state.output!.original).toBe("hello world");
    expect(c.state.output!.detected).toBe(false);

    // wait past the delayed response's arrival, then recheck every render
    await new Promise((r) => setTimeout(r, 350));
    expect(c.state.output!.original).toBe("hello world");
    for (const state of states) {
      if (state.output !== null) {
        expect(state.output.original).toBe(state.draft);
      }
    }
  });
});

describe("accept and undo", () => {
  test("accept mask rewrites the draft and the re-check is clean", async () => {
    const { controller: c } = make(30);
    c.setDraft(LOCATION_ROW);
    await until(() => c.state.output !== null, 1000);
    expect(c.state.output!.detected).toBe(true);

    c.acceptSuggestion();
    expect(c.state.draft).toBe("f****** china attacked github");
    expect(c.state.canUndo).toBe(true);
    expect(c.state.lastAccepted).toEqual({
      before: LOCATION_ROW,
      after: "f****** china attacked github",
      strategy: "mask",
    });

    await until(() => c.state.output !== null, 1000);
    expect(c.state.output!.detected).toBe(false);
    expect(c.state.output!.spans).toEqual([]);
  });

  test("accept with remove strategy uses the remove rewrite", async () => {
    const { controller: c } = make(30);
    c.setStrategy("remove");
    c.setDraft(LOCATION_ROW);
    await until(() => c.state.output !== null, 1000);
    c.acceptSuggestion();
    expect(c.state.draft).toBe(c.state.lastAccepted!.after);
    expect(c.state.draft).not.toContain("fucking");
    await until(() => c.state.output !== null, 1000);
    expect(c.state.output!.detected).toBe(false);
  });

  test("undo restores the prior draft and re-detects", async () => {
    const { controller: c } = make(30);
    c.setDraft(LOCATION_ROW);
    await until(() => c.state.output !== null, 1000);
    c.acceptSuggestion();
    await until(() => c.state.output !== null, 1000);

    c.undo();
    expect(c.state.draft).toBe(LOCATION_ROW);
    expect(c.state.canUndo).toBe(false);
    expect(c.state.lastAccepted).toBeNull();
    await until(() => c.state.output !== null, 1000);
    expect(c.state.output!.detected).toBe(true);
  });

  test("accept without a detection is a no-op", async () => {
    const { controller: c } = make(30);
    c.setDraft("hello");
    await until(() => c.state.output !== null, 1000);
    c.acceptSuggestion();
    expect(c.state.draft).toBe("hello");
    expect(c.state.canUndo).toBe(false);
  });
});
