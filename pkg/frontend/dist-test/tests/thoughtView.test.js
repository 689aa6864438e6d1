import assert from "node:assert/strict";
import { test } from "node:test";
import { BACKTRACK_TERMS, anchorTargets, countMarkers, renderThoughtHtml, segmentText, } from "../src/thoughtView.js";
import { fixture } from "./helpers.js";
const singleThoughts = fixture("thoughts.single.json").thoughts;
const twinThoughts = fixture("thoughts.twin.json").thoughts;
const twinTraversals = fixture("traversals.twin.json").traversals;
const singleTree = fixture("tree.single.json");
const journeySingle = singleThoughts.find((t) => t.name === "thought.journey.0.json").document;
const shortcutSingle = singleThoughts.find((t) => t.name === "thought.shortcut.0.json").document;
const journeyTwin = twinThoughts.find((t) => t.name === "thought.journey.0.json").document;
test("journey with two backtracks highlights two backtrack markers", () => {
    // The single-leaf fixture tree has two wrong branches, so its journey
    // backtracks twice; each backtrack line opens with a backtrack connective.
    const backtrackLines = journeySingle.draft_text.split("\n").filter((l) => l.includes("we return to"));
    assert.equal(backtrackLines.length, 2);
    assert.equal(countMarkers(journeySingle.draft_text, BACKTRACK_TERMS), 2);
    const html = renderThoughtHtml(journeySingle);
    const highlighted = [...html.matchAll(/<mark>/g)].length;
    assert.ok(highlighted >= 2);
});
test("shortcut thought has zero highlights", () => {
    assert.equal(countMarkers(shortcutSingle.draft_text, BACKTRACK_TERMS), 0);
    const backtrackMarks = segmentText(shortcutSingle.draft_text, BACKTRACK_TERMS).filter((s) => s.marker);
    assert.equal(backtrackMarks.length, 0);
});
test("whole-word matching rejects substrings", () => {
    assert.equal(countMarkers("await the outcome", ["wait"]), 0);
    assert.equal(countMarkers("Wait for it", ["wait"]), 1);
});
test("longest lexicon term wins once", () => {
    const segments = segmentText("Wait a second before retrying", ["wait", "wait a second"]);
    const markers = segments.filter((s) => s.marker);
    assert.equal(markers.length, 1);
    assert.equal(markers[0].text, "Wait a second");
});
test("anchors link thought lines to tree nodes", () => {
    const traversal = twinTraversals.find((t) => t.name === "traversal.journey.0.json").document;
    const targets = anchorTargets(journeyTwin, traversal);
    assert.equal(targets.length, journeyTwin.step_anchors.length);
    const advanceIds = new Set(traversal.events.filter((e) => e.kind === "advance").map((e) => e.node_id));
    for (const target of targets) {
        assert.ok(advanceIds.has(target.nodeId), `${target.nodeId} not an advanced node`);
    }
});
test("rendered anchors carry node ids present in the tree", () => {
    const traversal = fixture("traversals.twin.json")
        .traversals.find((t) => t.name === "traversal.journey.0.json").document;
    const html = renderThoughtHtml(journeyTwin, traversal);
    const ids = [...html.matchAll(/data-node-id="([^"]+)"/g)].map((m) => m[1]);
    assert.ok(ids.length > 0);
    const treeIds = new Set(fixture("tree.twin.json").nodes.map((n) => n.node_id));
    for (const id of ids)
        assert.ok(treeIds.has(id));
});
test("single-tree journey marker count matches the served stats", () => {
    // reflection_marker_count in the document counts backtrack + reflect terms.
    const total = countMarkers(journeySingle.draft_text);
    assert.equal(total, journeySingle.stats.reflection_marker_count);
    assert.ok(singleTree.nodes.length > 0);
});
