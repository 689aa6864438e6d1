// Side-by-side iteration comparison: paired thoughts with stats deltas.
// Token/line counts come from the fetched stats documents; backtrack-marker
// counts are recomputed from the texts so the delta never trusts a stale
// number.

import { BACKTRACK_TERMS, countMarkers, thoughtText } from "./thoughtView.js";
import type { NamedDoc, ThoughtDoc } from "./types.js";

export interface StatsDelta {
  tokenCount: number;
  lineCount: number;
  backtrackMarkers: number;
}

export function statsDelta(a: ThoughtDoc, b: ThoughtDoc): StatsDelta {
  return {
    tokenCount: b.stats.token_count - a.stats.token_count,
    lineCount: b.stats.line_count - a.stats.line_count,
    backtrackMarkers: countMarkers(thoughtText(b), BACKTRACK_TERMS) - countMarkers(thoughtText(a), BACKTRACK_TERMS),
  };
}

export interface ComparisonRow {
  name: string;
  left: ThoughtDoc | null;
  right: ThoughtDoc | null;
  delta: StatsDelta | null;
}

/** Pair thoughts from two runs by artifact name (kind + seed). */
export function pairThoughts(left: NamedDoc<ThoughtDoc>[], right: NamedDoc<ThoughtDoc>[]): ComparisonRow[] {
  const names = [...new Set([...left.map((t) => t.name), ...right.map((t) => t.name)])].sort();
  const leftByName = new Map(left.map((t) => [t.name, t.document]));
  const rightByName = new Map(right.map((t) => [t.name, t.document]));
  return names.map((name) => {
    const a = leftByName.get(name) ?? null;
    const b = rightByName.get(name) ?? null;
    return { name, left: a, right: b, delta: a && b ? statsDelta(a, b) : null };
  });
}
