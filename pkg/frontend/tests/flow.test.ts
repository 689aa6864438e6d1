// Annotation -> re-derive preview flow against a stubbed wire, using the
// exact JSON the service produced for the fixture run.

import assert from "node:assert/strict";
import { test } from "node:test";

import { ApiClient, ApiError } from "../src/api.js";
import { confirmAnnotation, failAnnotation, initialState, selectRun, setPreview, stageAnnotation } from "../src/state.js";
import { renderThoughtHtml } from "../src/thoughtView.js";
import { emphasizedPaths } from "../src/treeView.js";
import type { AnnotationRecordDoc, RederiveResponseDoc, TreeDoc } from "../src/types.js";
import { fixture, offlineFetch, stubFetch } from "./helpers.js";

const annotationResponse = fixture<{ id: string; record: AnnotationRecordDoc }>("annotation.response.json");
const annotatedTree = fixture<TreeDoc>("tree.twin.annotated.json");
const rederiveResponse = fixture<RederiveResponseDoc>("rederive.twin.json");

function wiredClient(log: Array<{ method: string; path: string; body?: unknown }> = []): ApiClient {
  return new ApiClient(
    "",
    stubFetch(
      [
        { method: "POST", path: "/runs/run-twin/annotations", status: 201, body: annotationResponse },
        { method: "GET", path: "/runs/run-twin/tree", body: annotatedTree },
        { method: "POST", path: "/runs/run-twin/rederive", body: rederiveResponse },
      ],
      log,
    ),
  );
}

test("posting an annotation and requesting a preview renders the rerouted journey", async () => {
  const log: Array<{ method: string; path: string; body?: unknown }> = [];
  const api = wiredClient(log);
  let state = selectRun(initialState(), "run-twin");

  state = stageAnnotation(state, { nodeId: "n2", verdict: "incorrect", comment: "division off", author: "reviewer" });
  const response = await api.postAnnotation("run-twin", {
    node_id: "n2",
    verdict: "incorrect",
    comment: "division off",
    author: "reviewer",
  });
  state = confirmAnnotation(state, "n2", response.record);
  assert.equal(state.previewAvailable, true);

  // The refreshed tree now emphasizes the alternative correct path.
  const refreshed = await api.getTree("run-twin");
  assert.deepEqual(emphasizedPaths(refreshed), [["n0", "n1", "n3"]]);

  const preview = await api.rederive("run-twin", { trials: 2, seed: 0 });
  state = setPreview(state, preview);
  const advances = preview.traversal.events.filter((e) => e.kind === "advance");
  assert.equal(advances[advances.length - 1]!.node_id, "n3"); // rerouted

  const html = renderThoughtHtml(preview.thought, preview.traversal);
  assert.ok(html.includes("Halve both sides")); // the alternative leaf's step
  assert.ok(log.some((entry) => entry.method === "POST" && entry.path === "/runs/run-twin/rederive"));
});

test("service rejection keeps the annotation pending with the error", async () => {
  const api = new ApiClient(
    "",
    stubFetch([{ method: "POST", path: "/runs/run-twin/annotations", status: 422, body: { detail: "run run-twin has no node ghost" } }]),
  );
  let state = selectRun(initialState(), "run-twin");
  state = stageAnnotation(state, { nodeId: "ghost", verdict: "incorrect", comment: "", author: "t" });
  try {
    await api.postAnnotation("run-twin", { node_id: "ghost", verdict: "incorrect" });
    assert.fail("expected rejection");
  } catch (error) {
    assert.ok(error instanceof ApiError);
    assert.equal(error.status, 422);
    state = failAnnotation(state, "ghost", error.message);
  }
  assert.equal(state.pendingAnnotations.length, 1);
  assert.match(state.pendingAnnotations[0]!.error ?? "", /no node ghost/);
});

test("offline service leaves the annotation retryable", async () => {
  const api = new ApiClient("", offlineFetch());
  let state = selectRun(initialState(), "run-twin");
  state = stageAnnotation(state, { nodeId: "n2", verdict: "incorrect", comment: "", author: "t" });
  try {
    await api.postAnnotation("run-twin", { node_id: "n2", verdict: "incorrect" });
    assert.fail("expected failure");
  } catch (error) {
    assert.ok(error instanceof ApiError);
    assert.equal(error.status, 0);
    state = failAnnotation(state, "n2", error.message);
  }
  assert.equal(state.pendingAnnotations.length, 1);
  assert.equal(state.confirmedAnnotations.length, 0);

  // Retry against a healthy wire succeeds and clears the pending entry.
  const healthy = wiredClient();
  const response = await healthy.postAnnotation("run-twin", { node_id: "n2", verdict: "incorrect" });
  state = confirmAnnotation(state, "n2", response.record);
  assert.equal(state.pendingAnnotations.length, 0);
});
