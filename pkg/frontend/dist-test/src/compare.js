// Side-by-side iteration comparison: paired thoughts with stats deltas.
// Token/line counts come from the fetched stats documents; backtrack-marker
// counts are recomputed from the texts so the delta never trusts a stale
// number.
import { BACKTRACK_TERMS, countMarkers, thoughtText } from "./thoughtView.js";
export function statsDelta(a, b) {
    return {
        tokenCount: b.stats.token_count - a.stats.token_count,
        lineCount: b.stats.line_count - a.stats.line_count,
        backtrackMarkers: countMarkers(thoughtText(b), BACKTRACK_TERMS) - countMarkers(thoughtText(a), BACKTRACK_TERMS),
    };
}
/** Pair thoughts from two runs by artifact name (kind + seed). */
export function pairThoughts(left, right) {
    const names = [...new Set([...left.map((t) => t.name), ...right.map((t) => t.name)])].sort();
    const leftByName = new Map(left.map((t) => [t.name, t.document]));
    const rightByName = new Map(right.map((t) => [t.name, t.document]));
    return names.map((name) => {
        const a = leftByName.get(name) ?? null;
        const b = rightByName.get(name) ?? null;
        return { name, left: a, right: b, delta: a && b ? statsDelta(a, b) : null };
    });
}
