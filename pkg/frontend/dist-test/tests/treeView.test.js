import assert from "node:assert/strict";
import { test } from "node:test";
import { computeTreeRows, correctPathNodeIds, emphasizedPaths, nodeColor, renderTreeHtml, } from "../src/treeView.js";
import { fixture } from "./helpers.js";
const singleTree = fixture("tree.single.json");
const twinTree = fixture("tree.twin.json");
const annotatedTwin = fixture("tree.twin.annotated.json");
test("fixture run renders exactly one emphasized correct path", () => {
    const paths = emphasizedPaths(singleTree);
    assert.equal(paths.length, 1);
    assert.deepEqual(paths[0], ["n0", "n1", "n3"]);
});
test("two correct leaves emphasize two paths", () => {
    assert.equal(emphasizedPaths(twinTree).length, 2);
});
test("annotation reroutes the emphasized path without touching stored flags", () => {
    const paths = emphasizedPaths(annotatedTwin);
    assert.equal(paths.length, 1);
    assert.deepEqual(paths[0], ["n0", "n1", "n3"]); // n2 flipped incorrect by the human
    const flipped = annotatedTwin.nodes.find((n) => n.node_id === "n2");
    assert.equal(flipped.reward?.value, 1); // stored machine reward untouched
    assert.equal(flipped.effective_reward?.value, 0);
});
test("correct path ids cover the union of paths", () => {
    assert.deepEqual([...correctPathNodeIds(twinTree)].sort(), ["n0", "n1", "n2", "n3"]);
});
test("node colors follow effective rewards", () => {
    const node = (id) => singleTree.nodes.find((n) => n.node_id === id);
    assert.equal(nodeColor(node("n1")), "correct");
    assert.equal(nodeColor(node("n2")), "incorrect");
    const unrewarded = { ...node("n2"), reward: null, effective_reward: null };
    assert.equal(nodeColor(unrewarded), "pruned");
    assert.equal(nodeColor({ ...unrewarded, pruned: false }), "unknown");
});
test("collapsing hides descendants and re-expanding restores them", () => {
    const expanded = computeTreeRows(singleTree, new Set());
    assert.equal(expanded.length, singleTree.nodes.length);
    const collapsed = computeTreeRows(singleTree, new Set(["n1"]));
    const visible = collapsed.map((r) => r.node.node_id);
    assert.ok(visible.includes("n1"));
    assert.ok(!visible.includes("n3") && !visible.includes("n4"));
    const restored = computeTreeRows(singleTree, new Set());
    assert.deepEqual(restored.map((r) => r.node.node_id), expanded.map((r) => r.node.node_id));
});
test("emphasized edges lie exactly on correct paths", () => {
    const rows = computeTreeRows(singleTree, new Set());
    const emphasized = rows.filter((r) => r.emphasizedEdge).map((r) => r.node.node_id);
    assert.deepEqual(emphasized.sort(), ["n1", "n3"]);
});
test("annotated node carries an override badge alongside the original reward", () => {
    const rows = computeTreeRows(annotatedTwin, new Set());
    const overridden = rows.find((r) => r.node.node_id === "n2");
    assert.ok(overridden.hasOverride);
    const html = renderTreeHtml(rows);
    assert.ok(html.includes("badge-override"));
    assert.ok(html.includes("human: incorrect"));
});
test("render escapes step text", () => {
    const hostile = {
        ...singleTree,
        nodes: singleTree.nodes.map((n) => n.node_id === "n1" ? { ...n, step_text: 'x <script>alert("boom")</script>' } : n),
    };
    const html = renderTreeHtml(computeTreeRows(hostile, new Set()));
    assert.ok(!html.includes("<script>"));
    assert.ok(html.includes("&lt;script&gt;"));
});
