// The whole client state in one structure plus pure transitions.
// Pending annotations are cleared only when the service confirms the POST.
export function initialState() {
    return {
        selectedRun: null,
        collapsed: new Set(),
        activeFilter: "",
        comparison: null,
        pendingAnnotations: [],
        confirmedAnnotations: [],
        preview: null,
        previewAvailable: false,
    };
}
export function selectRun(state, runId) {
    return {
        ...state,
        selectedRun: runId,
        collapsed: new Set(),
        pendingAnnotations: [],
        confirmedAnnotations: [],
        preview: null,
        previewAvailable: false,
    };
}
export function toggleCollapsed(state, nodeId) {
    const collapsed = new Set(state.collapsed);
    if (collapsed.has(nodeId))
        collapsed.delete(nodeId);
    else
        collapsed.add(nodeId);
    return { ...state, collapsed };
}
export function stageAnnotation(state, pending) {
    return { ...state, pendingAnnotations: [...state.pendingAnnotations, { ...pending, error: null }] };
}
/** Service confirmed the POST: the pending entry is dropped, badge data stored. */
export function confirmAnnotation(state, nodeId, record) {
    return {
        ...state,
        pendingAnnotations: state.pendingAnnotations.filter((p) => p.nodeId !== nodeId),
        confirmedAnnotations: [...state.confirmedAnnotations, record],
        previewAvailable: true,
    };
}
/** Service rejected or was unreachable: keep the entry pending with the error. */
export function failAnnotation(state, nodeId, error) {
    return {
        ...state,
        pendingAnnotations: state.pendingAnnotations.map((p) => (p.nodeId === nodeId ? { ...p, error } : p)),
    };
}
export function setPreview(state, preview) {
    return { ...state, preview };
}
export function setComparison(state, runA, runB) {
    return { ...state, comparison: { runA, runB } };
}
export function setFilter(state, filter) {
    return { ...state, activeFilter: filter };
}
