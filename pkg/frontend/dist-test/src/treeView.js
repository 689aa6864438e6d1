// Tree layout and coloring, recomputed from the served document.
//
// Correct paths are derived client-side from leaf statuses plus
// annotation-resolved effective rewards (the stored on_correct_path flag
// reflects build time, not the current annotation log), so an annotation
// posted a moment ago immediately re-routes the emphasis.
import { ANNOTATION_PROVIDER_ID } from "./types.js";
export function childrenIndex(tree) {
    const index = new Map();
    for (const node of tree.nodes)
        index.set(node.node_id, []);
    for (const node of tree.nodes) {
        if (node.parent_id !== null)
            index.get(node.parent_id)?.push(node);
    }
    for (const kids of index.values())
        kids.sort((a, b) => a.node_id.localeCompare(b.node_id));
    return index;
}
export function hasAnnotationOverride(node) {
    return node.effective_reward?.provider_id === ANNOTATION_PROVIDER_ID;
}
export function leafEffectivelyCorrect(node) {
    if (!node.terminal)
        return false;
    if (hasAnnotationOverride(node))
        return node.effective_reward.value === 1;
    return node.leaf_status === "correct";
}
/** Node ids lying on some root-to-correct-leaf path, under current annotations. */
export function correctPathNodeIds(tree) {
    const byId = new Map(tree.nodes.map((n) => [n.node_id, n]));
    const onPath = new Set();
    for (const node of tree.nodes) {
        if (!leafEffectivelyCorrect(node))
            continue;
        let current = node;
        while (current) {
            onPath.add(current.node_id);
            current = current.parent_id !== null ? byId.get(current.parent_id) : undefined;
        }
    }
    return onPath;
}
/** Root-to-leaf id chains of every emphasized correct path, ordered. */
export function emphasizedPaths(tree) {
    const byId = new Map(tree.nodes.map((n) => [n.node_id, n]));
    const paths = [];
    for (const node of [...tree.nodes].sort((a, b) => a.node_id.localeCompare(b.node_id))) {
        if (!leafEffectivelyCorrect(node))
            continue;
        const chain = [];
        let current = node;
        while (current) {
            chain.unshift(current.node_id);
            current = current.parent_id !== null ? byId.get(current.parent_id) : undefined;
        }
        paths.push(chain);
    }
    return paths;
}
export function nodeColor(node) {
    const reward = node.effective_reward ?? node.reward;
    if (reward == null)
        return node.pruned ? "pruned" : "unknown";
    const incorrect = reward.kind === "binary" ? reward.value === 0 : reward.value < 0.5;
    if (incorrect)
        return "incorrect";
    return "correct";
}
/**
 * Visible rows in render order. Collapsed nodes stay visible themselves;
 * their descendants are hidden until re-expanded (the collapsed set is the
 * whole layout state, so expansion restores exactly what was there).
 */
export function computeTreeRows(tree, collapsed) {
    const kids = childrenIndex(tree);
    const onPath = correctPathNodeIds(tree);
    const rows = [];
    const byId = new Map(tree.nodes.map((n) => [n.node_id, n]));
    const root = byId.get(tree.root_id);
    if (!root)
        return rows;
    const visit = (node) => {
        const children = kids.get(node.node_id) ?? [];
        rows.push({
            node,
            depth: node.depth,
            color: nodeColor(node),
            onCorrectPath: onPath.has(node.node_id),
            emphasizedEdge: node.parent_id !== null && onPath.has(node.node_id) && onPath.has(node.parent_id),
            hasChildren: children.length > 0,
            collapsed: collapsed.has(node.node_id),
            hasOverride: hasAnnotationOverride(node),
        });
        if (collapsed.has(node.node_id))
            return;
        for (const child of children)
            visit(child);
    };
    visit(root);
    return rows;
}
function escapeHtml(text) {
    return text
        .replaceAll("&", "&amp;")
        .replaceAll("<", "&lt;")
        .replaceAll(">", "&gt;")
        .replaceAll('"', "&quot;");
}
/** Static HTML for the tree rows; interactivity is attached by the app shell. */
export function renderTreeHtml(rows) {
    const parts = ['<ul class="tree">'];
    for (const row of rows) {
        const label = row.node.step_text === "" ? "(problem)" : row.node.step_text;
        const classes = [
            "tree-node",
            `color-${row.color}`,
            row.emphasizedEdge ? "emphasized" : "",
            row.node.pruned ? "pruned" : "",
        ]
            .filter(Boolean)
            .join(" ");
        const toggle = row.hasChildren ? `<button class="toggle" data-node-id="${row.node.node_id}">${row.collapsed ? "+" : "−"}</button>` : "<span class=\"toggle-spacer\"></span>";
        const badge = row.hasOverride
            ? `<span class="badge badge-override">${row.node.effective_reward.value === 1 ? "✓ human: correct" : "✗ human: incorrect"}</span>`
            : "";
        parts.push(`<li class="${classes}" data-node-id="${row.node.node_id}" style="--depth:${row.depth}">` +
            `${toggle}<span class="step">${escapeHtml(label)}</span>${badge}` +
            "</li>");
    }
    parts.push("</ul>");
    return parts.join("");
}
