import { afterEach, beforeEach, expect, test } from "vitest";

import { ApiClient } from "../src/api.js";
import { TaxonomyStore } from "../src/taxonomy.js";
import { startStub, type StubServer } from "./stub_server.js";

let stub: StubServer;

beforeEach(async () => {
  stub = await startStub();
});

afterEach(async () => {
  await stub.close();
});

test("loads once and exposes 11 leaves in 2 branches", async () => {
  const store = new TaxonomyStore();
  const api = new ApiClient(stub.url);
  await store.load(api);
  await store.load(api); // second call is a no-op
  expect(stub.taxonomyCalls).toBe(1);

  const state = store.state;
  expect(state.status).toBe("ready");
  if (state.status !== "ready") return;
  expect(state.taxonomy.branches).toHaveLength(2);
  const leafCount = state.taxonomy.branches.reduce(
    (n, b) => n + b.attributes.length,
    0,
  );
  expect(leafCount).toBe(11);
});

test("resolves badge names and tooltips from the taxonomy", async () => {
  const store = new TaxonomyStore();
  await store.load(new ApiClient(stub.url));
  const leaf = store.leaf("location");
  expect(leaf.name).toBe("Location");
  expect(leaf.description).toBe(
    "targets the place or country a person is from or lives in",
  );
});

test("unreachable service lands in the offline state with id fallback", async () => {
  const dead = await startStub();
  await dead.close();
  const store = new TaxonomyStore();
  await store.load(new ApiClient(dead.url));
  expect(store.state.status).toBe("offline");
  expect(store.leaf("location")).toEqual({
    id: "location",
    name: "location",
    description: "",
  });
});

test("subscribers see the transition from loading to ready", async () => {
  const store = new TaxonomyStore();
  const statuses: string[] = [];
  store.subscribe((state) => statuses.push(state.status));
  await store.load(new ApiClient(stub.url));
  expect(statuses).toEqual(["loading", "ready"]);
});
