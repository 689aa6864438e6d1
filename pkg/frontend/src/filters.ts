// Client-side conditional filtering over thought documents, matching the
// service's predicate vocabulary so filter strings round-trip to /runs.

import { BACKTRACK_TERMS, countMarkers, thoughtText } from "./thoughtView.js";
import type { NamedDoc, ThoughtDoc } from "./types.js";

export interface ThoughtCase {
  name: string;
  text: string;
  answerCorrect: boolean | null;
  iterationTag: string | null;
}

export type PredicateName = "answer-correct" | "answer-incorrect" | "contains-keyword" | "iteration-tag" | "has-backtrack";

export interface Predicate {
  name: PredicateName;
  arg?: string;
}

export function parsePredicates(spec: string): Predicate[] {
  const predicates: Predicate[] = [];
  for (const chunk of spec.split(",")) {
    const trimmed = chunk.trim();
    if (!trimmed) continue;
    const [name, ...rest] = trimmed.split(":");
    const arg = rest.join(":") || undefined;
    if (!["answer-correct", "answer-incorrect", "contains-keyword", "iteration-tag", "has-backtrack"].includes(name ?? "")) {
      throw new Error(`unknown predicate ${name}`);
    }
    if ((name === "contains-keyword" || name === "iteration-tag") && !arg) {
      throw new Error(`predicate ${name} requires an argument`);
    }
    predicates.push({ name: name as PredicateName, arg });
  }
  return predicates;
}

export function matches(thought: ThoughtCase, predicate: Predicate): boolean {
  switch (predicate.name) {
    case "answer-correct":
      return thought.answerCorrect === true;
    case "answer-incorrect":
      return thought.answerCorrect === false;
    case "contains-keyword":
      return countMarkers(thought.text, [predicate.arg ?? ""]) > 0;
    case "iteration-tag":
      return thought.iterationTag === predicate.arg;
    case "has-backtrack":
      return countMarkers(thought.text, BACKTRACK_TERMS) > 0;
  }
}

/** Conjunction of predicates, preserving input order. */
export function filterThoughts(cases: ThoughtCase[], predicates: Predicate[]): ThoughtCase[] {
  return cases.filter((c) => predicates.every((p) => matches(c, p)));
}

export function toThoughtCases(
  thoughts: NamedDoc<ThoughtDoc>[],
  runInfo: { answerCorrect: boolean | null; iterationTag: string | null },
): ThoughtCase[] {
  return thoughts.map((entry) => ({
    name: entry.name,
    text: thoughtText(entry.document),
    answerCorrect: runInfo.answerCorrect,
    iterationTag: runInfo.iterationTag,
  }));
}
