// Browser shell: wires the pure view modules to the DOM and the service.
import { ApiClient, ApiError } from "./api.js";
import { pairThoughts } from "./compare.js";
import { filterThoughts, parsePredicates, toThoughtCases } from "./filters.js";
import { confirmAnnotation, failAnnotation, initialState, selectRun, setComparison, setFilter, setPreview, stageAnnotation, toggleCollapsed, } from "./state.js";
import { renderThoughtHtml } from "./thoughtView.js";
import { computeTreeRows, renderTreeHtml } from "./treeView.js";
const api = new ApiClient("");
let state = initialState();
let runs = [];
let tree = null;
let thoughts = [];
let traversals = [];
function el(id) {
    const found = document.getElementById(id);
    if (!found)
        throw new Error(`missing element #${id}`);
    return found;
}
function setStatus(message, isError = false) {
    const status = el("status");
    status.textContent = message;
    status.className = isError ? "status error" : "status";
}
async function withRetry(label, action) {
    try {
        const result = await action();
        setStatus("");
        return result;
    }
    catch (error) {
        const detail = error instanceof ApiError ? error.message : String(error);
        const status = el("status");
        status.innerHTML = "";
        status.className = "status error";
        status.append(`${label} failed: ${detail} `);
        const retry = document.createElement("button");
        retry.textContent = "retry";
        retry.onclick = () => void withRetry(label, action);
        status.append(retry);
        return null;
    }
}
async function refreshRuns() {
    const listing = await withRetry("loading runs", () => api.listRuns(state.activeFilter));
    if (!listing)
        return;
    runs = listing.runs;
    const list = el("run-list");
    list.innerHTML = "";
    for (const run of runs) {
        const item = document.createElement("li");
        const link = document.createElement("a");
        link.href = "#";
        link.textContent = `${run.run_id} — ${run.problem_id} [${run.iteration_tag}] (${run.node_count} nodes, ${run.annotation_count} notes)`;
        link.onclick = (event) => {
            event.preventDefault();
            void openRun(run.run_id);
        };
        item.append(link);
        list.append(item);
    }
    if (listing.warnings.length)
        setStatus(`${listing.warnings.length} unreadable run(s) skipped`, true);
    const options = runs.map((r) => `<option value="${r.run_id}">${r.run_id}</option>`).join("");
    el("compare-a").innerHTML = options;
    el("compare-b").innerHTML = options;
}
async function openRun(runId) {
    state = selectRun(state, runId);
    const loadedTree = await withRetry("loading tree", () => api.getTree(runId));
    if (!loadedTree)
        return;
    tree = loadedTree;
    const thoughtsDoc = await withRetry("loading thoughts", () => api.getThoughts(runId));
    const traversalsDoc = await withRetry("loading traversals", () => api.getTraversals(runId));
    thoughts = thoughtsDoc?.thoughts ?? [];
    traversals = traversalsDoc?.traversals ?? [];
    el("run-title").textContent = runId;
    renderTree();
    renderThoughts();
    el("preview-pane").innerHTML = "";
}
function renderTree() {
    if (!tree)
        return;
    const pane = el("tree-pane");
    pane.innerHTML = renderTreeHtml(computeTreeRows(tree, state.collapsed));
    for (const toggle of pane.querySelectorAll(".toggle")) {
        toggle.onclick = () => {
            state = toggleCollapsed(state, toggle.dataset.nodeId ?? "");
            renderTree();
        };
    }
    for (const row of pane.querySelectorAll(".tree-node")) {
        row.ondblclick = () => showNodeDetail(row.dataset.nodeId ?? "");
    }
}
function showNodeDetail(nodeId) {
    if (!tree)
        return;
    const node = tree.nodes.find((n) => n.node_id === nodeId);
    if (!node)
        return;
    const detail = el("node-detail");
    const reward = node.effective_reward ?? node.reward;
    const pendingHere = state.pendingAnnotations.filter((p) => p.nodeId === nodeId);
    detail.innerHTML = `
    <h3>${node.node_id}</h3>
    <p class="step-text">${node.step_text || "(problem root)"}</p>
    <p>status: ${node.leaf_status}${node.pruned ? " · pruned" : ""}</p>
    <p>reward: ${reward ? `${reward.kind} ${reward.value}` : "unknown"}</p>
    <p class="rationale">${reward?.rationale ?? ""}</p>
    ${pendingHere.map((p) => `<p class="badge badge-pending">pending: ${p.verdict}${p.error ? ` — ${p.error}` : ""}</p>`).join("")}
    <div class="annotate">
      <select id="verdict-select"><option value="incorrect">incorrect</option><option value="correct">correct</option></select>
      <input id="comment-input" placeholder="comment" />
      <button id="annotate-button">annotate</button>
      <button id="preview-button" ${state.previewAvailable ? "" : "disabled"}>re-derive preview</button>
    </div>`;
    el("annotate-button").onclick = () => void annotate(nodeId);
    el("preview-button").onclick = () => void requestPreview();
}
async function annotate(nodeId) {
    const runId = state.selectedRun;
    if (!runId)
        return;
    const verdict = el("verdict-select").value;
    const comment = el("comment-input").value;
    state = stageAnnotation(state, { nodeId, verdict, comment, author: "workbench" });
    showNodeDetail(nodeId);
    try {
        const response = await api.postAnnotation(runId, { node_id: nodeId, verdict, comment, author: "workbench" });
        state = confirmAnnotation(state, nodeId, response.record);
        const refreshed = await api.getTree(runId);
        tree = refreshed;
        renderTree();
        showNodeDetail(nodeId);
        setStatus(`annotation ${response.id} stored`);
    }
    catch (error) {
        const detail = error instanceof ApiError ? error.message : String(error);
        state = failAnnotation(state, nodeId, detail);
        showNodeDetail(nodeId);
        setStatus(`annotation rejected: ${detail}`, true);
    }
}
async function requestPreview() {
    if (!state.selectedRun)
        return;
    const preview = await withRetry("re-derivation", () => api.rederive(state.selectedRun, { trials: 2, seed: 0 }));
    if (!preview)
        return;
    state = setPreview(state, preview);
    const pane = el("preview-pane");
    const original = thoughts.find((t) => t.name.startsWith("thought.journey."));
    pane.innerHTML = `
    <h3>re-derived journey (${preview.preview_id})</h3>
    <div class="compare-grid">
      <div><h4>original</h4>${original ? renderThoughtHtml(original.document) : "<p>(no original journey)</p>"}</div>
      <div><h4>preview</h4>${renderThoughtHtml(preview.thought, preview.traversal)}</div>
    </div>`;
}
function renderThoughts() {
    const pane = el("thought-pane");
    const run = runs.find((r) => r.run_id === state.selectedRun);
    const cases = toThoughtCases(thoughts, {
        answerCorrect: run ? run.has_correct_leaf : null,
        iterationTag: run ? run.iteration_tag : null,
    });
    let predicates = [];
    try {
        predicates = parsePredicates(state.activeFilter);
        setStatus("");
    }
    catch (error) {
        setStatus(String(error), true);
    }
    const visible = new Set(filterThoughts(cases, predicates).map((c) => c.name));
    pane.innerHTML = "";
    for (const entry of thoughts) {
        if (!visible.has(entry.name))
            continue;
        const traversal = traversals.find((t) => t.name === entry.document.traversal_ref + ".json") ?? null;
        const section = document.createElement("section");
        section.innerHTML = `<h4>${entry.name}</h4>` + renderThoughtHtml(entry.document, traversal?.document ?? null);
        pane.append(section);
    }
    for (const anchor of pane.querySelectorAll(".anchor")) {
        anchor.onclick = (event) => {
            event.preventDefault();
            const target = document.querySelector(`.tree-node[data-node-id="${anchor.dataset.nodeId}"]`);
            target?.scrollIntoView({ block: "center", behavior: "smooth" });
            target?.classList.add("flash");
            setTimeout(() => target?.classList.remove("flash"), 800);
        };
    }
}
async function compareRuns() {
    const runA = el("compare-a").value;
    const runB = el("compare-b").value;
    if (!runA || !runB)
        return;
    state = setComparison(state, runA, runB);
    const left = await withRetry("loading left run", () => api.getThoughts(runA));
    const right = await withRetry("loading right run", () => api.getThoughts(runB));
    if (!left || !right)
        return;
    const pane = el("compare-pane");
    const rows = pairThoughts(left.thoughts, right.thoughts);
    pane.innerHTML = rows
        .map((row) => {
        const delta = row.delta
            ? `<p class="delta">Δ tokens ${row.delta.tokenCount >= 0 ? "+" : ""}${row.delta.tokenCount}, Δ lines ${row.delta.lineCount >= 0 ? "+" : ""}${row.delta.lineCount}, Δ backtracks ${row.delta.backtrackMarkers >= 0 ? "+" : ""}${row.delta.backtrackMarkers}</p>`
            : "<p class=\"delta\">(unpaired)</p>";
        return `
        <section class="compare-row">
          <h4>${row.name}</h4>${delta}
          <div class="compare-grid">
            <div>${row.left ? renderThoughtHtml(row.left) : "<p>—</p>"}</div>
            <div>${row.right ? renderThoughtHtml(row.right) : "<p>—</p>"}</div>
          </div>
        </section>`;
    })
        .join("");
}
function wireControls() {
    el("filter-input").onchange = (event) => {
        state = setFilter(state, event.target.value);
        void refreshRuns().then(() => {
            if (state.selectedRun)
                renderThoughts();
        });
    };
    el("compare-button").onclick = () => void compareRuns();
}
export function start() {
    wireControls();
    void refreshRuns();
}
if (typeof document !== "undefined" && document.getElementById("run-list")) {
    start();
}
