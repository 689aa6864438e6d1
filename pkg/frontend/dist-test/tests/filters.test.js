import assert from "node:assert/strict";
import { test } from "node:test";
import { filterThoughts, parsePredicates, toThoughtCases } from "../src/filters.js";
import { fixture } from "./helpers.js";
const twinThoughts = fixture("thoughts.twin.json").thoughts;
const cases = toThoughtCases(twinThoughts, { answerCorrect: true, iterationTag: "iter2" });
test('filtering by keyword "wait" hides all shortcut thoughts', () => {
    const kept = filterThoughts(cases, parsePredicates("contains-keyword:wait"));
    assert.ok(kept.length > 0);
    assert.ok(kept.every((c) => c.name.includes("journey")));
    assert.ok(!kept.some((c) => c.name.includes("shortcut")));
});
test("empty predicate set is the identity", () => {
    assert.deepEqual(filterThoughts(cases, []), cases);
});
test("answer predicates use run-level correctness", () => {
    assert.equal(filterThoughts(cases, parsePredicates("answer-correct")).length, cases.length);
    assert.equal(filterThoughts(cases, parsePredicates("answer-incorrect")).length, 0);
});
test("iteration tag predicate", () => {
    assert.equal(filterThoughts(cases, parsePredicates("iteration-tag:iter2")).length, cases.length);
    assert.equal(filterThoughts(cases, parsePredicates("iteration-tag:iter9")).length, 0);
});
test("conjunction preserves order and intersects", () => {
    const kept = filterThoughts(cases, parsePredicates("answer-correct,has-backtrack"));
    assert.deepEqual(kept.map((c) => c.name), cases.filter((c) => c.name.includes("journey")).map((c) => c.name));
});
test("unknown predicates are rejected", () => {
    assert.throws(() => parsePredicates("totally-made-up"));
    assert.throws(() => parsePredicates("contains-keyword"));
});
