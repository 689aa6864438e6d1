import assert from "node:assert/strict";
import { test } from "node:test";
import { pairThoughts, statsDelta } from "../src/compare.js";
import { BACKTRACK_TERMS, countMarkers, thoughtText } from "../src/thoughtView.js";
import { fixture } from "./helpers.js";
const twin = fixture("thoughts.twin.json").thoughts;
const single = fixture("thoughts.single.json").thoughts;
test("same run compared against itself has zero deltas", () => {
    const rows = pairThoughts(twin, twin);
    assert.equal(rows.length, twin.length);
    for (const row of rows) {
        assert.ok(row.delta);
        assert.deepEqual(row.delta, { tokenCount: 0, lineCount: 0, backtrackMarkers: 0 });
    }
});
test("deltas equal recomputed analytics differences", () => {
    const left = twin.find((t) => t.name === "thought.journey.0.json").document;
    const right = single.find((t) => t.name === "thought.journey.0.json").document;
    const delta = statsDelta(left, right);
    assert.equal(delta.tokenCount, right.stats.token_count - left.stats.token_count);
    assert.equal(delta.lineCount, right.stats.line_count - left.stats.line_count);
    const expectedBacktracks = countMarkers(thoughtText(right), BACKTRACK_TERMS) - countMarkers(thoughtText(left), BACKTRACK_TERMS);
    assert.equal(delta.backtrackMarkers, expectedBacktracks);
    assert.ok(expectedBacktracks !== 0, "fixtures should differ in excursion count");
});
test("unpaired artifacts surface as one-sided rows", () => {
    const rows = pairThoughts(twin, []);
    assert.ok(rows.every((r) => r.right === null && r.delta === null));
});
test("pairing is keyed by artifact name", () => {
    const rows = pairThoughts(twin, single);
    for (const row of rows) {
        if (row.left && row.right) {
            assert.equal(row.left.traversal_ref.split(".")[1], row.right.traversal_ref.split(".")[1]);
        }
    }
});
