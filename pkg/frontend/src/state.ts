// The whole client state in one structure plus pure transitions.
// Pending annotations are cleared only when the service confirms the POST.

import type { AnnotationRecordDoc, RederiveResponseDoc, Verdict } from "./types.js";

export interface PendingAnnotation {
  nodeId: string;
  verdict: Verdict;
  comment: string;
  author: string;
  error: string | null; // set when the service rejected it; retry keeps it pending
}

export interface ViewState {
  selectedRun: string | null;
  collapsed: Set<string>;
  activeFilter: string;
  comparison: { runA: string; runB: string } | null;
  pendingAnnotations: PendingAnnotation[];
  confirmedAnnotations: AnnotationRecordDoc[];
  preview: RederiveResponseDoc | null;
  previewAvailable: boolean; // a confirmed annotation enables the preview action
}

export function initialState(): ViewState {
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

export function selectRun(state: ViewState, runId: string): ViewState {
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

export function toggleCollapsed(state: ViewState, nodeId: string): ViewState {
  const collapsed = new Set(state.collapsed);
  if (collapsed.has(nodeId)) collapsed.delete(nodeId);
  else collapsed.add(nodeId);
  return { ...state, collapsed };
}

export function stageAnnotation(state: ViewState, pending: Omit<PendingAnnotation, "error">): ViewState {
  return { ...state, pendingAnnotations: [...state.pendingAnnotations, { ...pending, error: null }] };
}

/** Service confirmed the POST: the pending entry is dropped, badge data stored. */
export function confirmAnnotation(state: ViewState, nodeId: string, record: AnnotationRecordDoc): ViewState {
  return {
    ...state,
    pendingAnnotations: state.pendingAnnotations.filter((p) => p.nodeId !== nodeId),
    confirmedAnnotations: [...state.confirmedAnnotations, record],
    previewAvailable: true,
  };
}

/** Service rejected or was unreachable: keep the entry pending with the error. */
export function failAnnotation(state: ViewState, nodeId: string, error: string): ViewState {
  return {
    ...state,
    pendingAnnotations: state.pendingAnnotations.map((p) => (p.nodeId === nodeId ? { ...p, error } : p)),
  };
}

export function setPreview(state: ViewState, preview: RederiveResponseDoc): ViewState {
  return { ...state, preview };
}

export function setComparison(state: ViewState, runA: string, runB: string): ViewState {
  return { ...state, comparison: { runA, runB } };
}

export function setFilter(state: ViewState, filter: string): ViewState {
  return { ...state, activeFilter: filter };
}
