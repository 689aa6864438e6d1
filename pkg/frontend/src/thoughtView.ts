// Thought reader: marker highlighting and anchor-to-node linking.

import type { ThoughtDoc, TraversalDoc } from "./types.js";

export const BACKTRACK_TERMS = ["wait", "wait a second", "let's go back", "hold on"] as const;
export const REFLECT_TERMS = ["alternatively", "let's pause and consider", "hmm", "on reflection"] as const;
export const MARKER_TERMS = [...BACKTRACK_TERMS, ...REFLECT_TERMS];

export interface TextSegment {
  text: string;
  marker: boolean;
}

const WORD_CHAR = /[A-Za-z0-9_']/;

/**
 * Split text into plain/marker segments: case-insensitive whole-word scan,
 * longest term first, non-overlapping. Mirrors the analytics scan so the
 * highlighted count equals the reported marker count.
 */
export function segmentText(text: string, terms: readonly string[] = MARKER_TERMS): TextSegment[] {
  const ordered = [...new Set(terms.filter((t) => t.length > 0))].sort((a, b) => b.length - a.length);
  if (ordered.length === 0) return [{ text, marker: false }];
  const escaped = ordered.map((t) => t.replace(/[.*+?^${}()|[\]\\]/g, "\\$&"));
  const pattern = new RegExp(`(?:${escaped.join("|")})`, "gi");

  const segments: TextSegment[] = [];
  let cursor = 0;
  for (const match of text.matchAll(pattern)) {
    const start = match.index ?? 0;
    const end = start + match[0].length;
    const before = text[start - 1];
    const after = text[end];
    if ((before && WORD_CHAR.test(before)) || (after && WORD_CHAR.test(after))) continue; // not whole-word
    if (start < cursor) continue; // overlaps a previous match
    if (start > cursor) segments.push({ text: text.slice(cursor, start), marker: false });
    segments.push({ text: match[0], marker: true });
    cursor = end;
  }
  if (cursor < text.length) segments.push({ text: text.slice(cursor), marker: false });
  return segments;
}

export function countMarkers(text: string, terms: readonly string[] = MARKER_TERMS): number {
  return segmentText(text, terms).filter((s) => s.marker).length;
}

export function thoughtText(thought: ThoughtDoc): string {
  return thought.polished_text ?? thought.draft_text;
}

/**
 * Map each step anchor to the tree node its advance event entered, so the
 * reader can link lines back to tree nodes.
 */
export function anchorTargets(thought: ThoughtDoc, traversal: TraversalDoc): Array<{ anchor: string; nodeId: string }> {
  const targets: Array<{ anchor: string; nodeId: string }> = [];
  for (const [eventIndex, anchor] of thought.step_anchors) {
    const event = traversal.events[eventIndex];
    if (event && event.kind === "advance") {
      targets.push({ anchor, nodeId: event.node_id });
    }
  }
  return targets;
}

function escapeHtml(text: string): string {
  return text.replaceAll("&", "&amp;").replaceAll("<", "&lt;").replaceAll(">", "&gt;").replaceAll('"', "&quot;");
}

/** HTML for the reader pane: one <p> per line, markers wrapped in <mark>. */
export function renderThoughtHtml(thought: ThoughtDoc, traversal: TraversalDoc | null = null): string {
  const anchors = traversal ? anchorTargets(thought, traversal) : [];
  const findAnchorNode = (line: string): string | null => {
    const normalized = line.toLowerCase();
    for (const { anchor, nodeId } of anchors) {
      if (normalized.includes(anchor)) return nodeId;
    }
    return null;
  };
  const lines = thoughtText(thought).split("\n");
  const parts: string[] = ['<div class="thought">'];
  for (const line of lines) {
    const body = segmentText(line)
      .map((segment) => (segment.marker ? `<mark>${escapeHtml(segment.text)}</mark>` : escapeHtml(segment.text)))
      .join("");
    const nodeId = findAnchorNode(line);
    if (nodeId) {
      parts.push(`<p class="thought-line"><a class="anchor" href="#" data-node-id="${nodeId}">⚲</a> ${body}</p>`);
    } else {
      parts.push(`<p class="thought-line">${body}</p>`);
    }
  }
  parts.push("</div>");
  return parts.join("");
}
