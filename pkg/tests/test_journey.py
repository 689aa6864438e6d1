from __future__ import annotations

import pytest

from conftest import binary, make_tree, node
from journey_forge.treebuilder.builder import build_tree
from journey_forge.journey.derive import (
    NoShortcutError,
    attach_reflections,
    extract_shortcuts,
    journey_violations,
    mark_correct_paths,
    traverse_journey,
    validate_traversal,
)
from journey_forge.model.types import (
    AnnotationRecord,
    BuildParams,
    EventKind,
    ExcursionChildPolicy,
    LeafStatus,
    PruneMode,
    TraversalConstraints,
    Verdict,
)
from journey_forge.providers.answer_check import final_answer
from journey_forge.providers.synthetic import OraclePolicy, OracleReward, generate_problem


def constraints(k=2, seed=0, policy=ExcursionChildPolicy.SEEDED_RANDOM) -> TraversalConstraints:
    return TraversalConstraints(max_trials_K=k, seed=seed, excursion_child_policy=policy)


def kinds(path):
    return [(e.kind.value, e.node_id) for e in path.events]


class TestShortcuts:
    def test_single_correct_leaf_single_shortcut(self, chain_tree):
        marked = mark_correct_paths(chain_tree)
        shortcuts = extract_shortcuts(marked)
        assert len(shortcuts) == 1
        assert kinds(shortcuts[0]) == [("advance", "n1"), ("advance", "n2"), ("advance", "n3")]
        assert validate_traversal(marked, shortcuts[0]) == []

    def test_two_correct_leaves_two_shortcuts(self, twin_tree):
        marked = mark_correct_paths(twin_tree)
        shortcuts = extract_shortcuts(marked)
        assert [tuple(e.node_id for e in s.events) for s in shortcuts] == [("n1", "n2"), ("n1", "n3")]

    def test_no_correct_leaf_empty_list(self):
        tree = make_tree([node("n0", None, "", 0), node("n1", "n0", "step", 1)])
        assert extract_shortcuts(mark_correct_paths(tree)) == []


class TestJourneyTraversal:
    def test_golden_event_list_wrong_branch_to_depth_two(self, journey_tree):
        journey = traverse_journey(journey_tree, constraints(seed=99))
        assert kinds(journey) == [
            ("advance", "n2"),   # wrong first step
            ("advance", "n5"),   # descend to the incorrect leaf
            ("backtrack", "n0"),
            ("advance", "n1"),   # back on the correct path
            ("advance", "n4"),   # second excursion under A
            ("backtrack", "n1"),
            ("advance", "n3"),   # correct leaf
        ]

    def test_journey_equals_shortcut_when_no_wrong_branches(self, chain_tree):
        journey = traverse_journey(chain_tree, constraints())
        assert journey.kind.value == "journey"
        assert kinds(journey) == [("advance", "n1"), ("advance", "n2"), ("advance", "n3")]
        assert not any(e.kind is EventKind.BACKTRACK for e in journey.events)

    def test_two_wrong_children_budget_two_takes_one_excursion(self):
        tree = make_tree(
            [
                node("n0", None, "", 0),
                node("n1", "n0", "good step: x = 3", 1, binary(1.0)),
                node("n2", "n1", "final: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
                node("n3", "n0", "bad step one: x = 9", 1, binary(0.0, "slip"), pruned=True),
                node("n4", "n0", "bad step two: x = 8", 1, binary(0.0, "slip"), pruned=True),
            ]
        )
        journey = traverse_journey(tree, constraints(k=2, seed=1))
        backtracks = [e for e in journey.events if e.kind is EventKind.BACKTRACK]
        assert len(backtracks) == 1

    def test_budget_three_takes_both_excursions(self):
        tree = make_tree(
            [
                node("n0", None, "", 0),
                node("n1", "n0", "good step: x = 3", 1, binary(1.0)),
                node("n2", "n1", "final: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
                node("n3", "n0", "bad step one: x = 9", 1, binary(0.0, "slip"), pruned=True),
                node("n4", "n0", "bad step two: x = 8", 1, binary(0.0, "slip"), pruned=True),
            ]
        )
        journey = traverse_journey(tree, constraints(k=3, seed=1))
        assert sum(1 for e in journey.events if e.kind is EventKind.BACKTRACK) == 2

    def test_no_correct_leaf_raises(self):
        tree = make_tree([node("n0", None, "", 0), node("n1", "n0", "step", 1)])
        with pytest.raises(NoShortcutError):
            traverse_journey(tree, constraints())

    def test_anchor_is_lexicographically_smallest_and_overridable(self, twin_tree):
        journey = traverse_journey(twin_tree, constraints())
        assert journey.advances()[-1].node_id == "n2"
        alt = traverse_journey(twin_tree, constraints(), anchor_index=1)
        assert alt.advances()[-1].node_id == "n3"

    def test_annotation_reroutes_journey(self, twin_tree):
        flip = AnnotationRecord(
            id="a0", node_id="n2", verdict=Verdict.INCORRECT, comment="actually wrong", author="t", timestamp="2025-01-01T00:00:00Z"
        )
        journey = traverse_journey(twin_tree, constraints(), annotations=[flip])
        assert journey.advances()[-1].node_id == "n3"

    def test_annotations_killing_all_leaves_raise(self, chain_tree):
        flip = AnnotationRecord(
            id="a0", node_id="n3", verdict=Verdict.INCORRECT, comment="", author="t", timestamp="2025-01-01T00:00:00Z"
        )
        with pytest.raises(NoShortcutError):
            traverse_journey(chain_tree, constraints(), annotations=[flip])

    def test_annotation_can_create_the_anchor_leaf(self, journey_tree):
        # Flip the stored correct leaf off and bless the incorrect one: the
        # journey must re-anchor at the human-approved leaf.
        log = [
            AnnotationRecord(id="a0", node_id="n3", verdict=Verdict.INCORRECT, comment="", author="t", timestamp="2025-01-01T00:00:00Z"),
            AnnotationRecord(id="a1", node_id="n5", verdict=Verdict.CORRECT, comment="accepted", author="t", timestamp="2025-01-01T00:00:01Z"),
        ]
        journey = traverse_journey(journey_tree, constraints(seed=2), annotations=log)
        assert journey.advances()[-1].node_id == "n5"
        assert journey_violations(journey_tree, journey, constraints(seed=2), annotations=log) == []

    def test_depth_one_correct_leaf_still_takes_excursions(self):
        tree = make_tree(
            [
                node("n0", None, "", 0),
                node("n1", "n0", "So x = 3. \\boxed{3}", 1, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
                node("n2", "n0", "So x = 9. \\boxed{9}", 1, binary(0.0, "slip"), terminal=True, status=LeafStatus.INCORRECT, pruned=True),
            ]
        )
        journey = traverse_journey(tree, constraints(k=2, seed=0))
        assert kinds(journey) == [("advance", "n2"), ("backtrack", "n0"), ("advance", "n1")]
        assert journey_violations(tree, journey, constraints(k=2, seed=0)) == []

    def test_lowest_reward_first_prefers_worst_child(self):
        tree = make_tree(
            [
                node("n0", None, "", 0),
                node("n1", "n0", "good: x = 3", 1, binary(1.0)),
                node("n2", "n1", "final: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
                node("n3", "n0", "mildly wrong: x = 4", 1, None, pruned=True),
                node("n4", "n0", "badly wrong: x = 9", 1, binary(0.0, "worse"), pruned=True),
            ]
        )
        journey = traverse_journey(tree, constraints(k=2, seed=3, policy=ExcursionChildPolicy.LOWEST_REWARD_FIRST))
        first_advance = journey.events[0]
        assert first_advance.node_id == "n4"  # reward 0 sorts before unscored


class TestJourneyInvariants:
    @pytest.mark.parametrize("seed", [0, 1, 7, 42, 1234])
    def test_oracle_journeys_pass_all_checks(self, seed):
        problem = generate_problem(seed)
        params = BuildParams(width_w=3, max_depth_D=6, beam_K=2, prune_mode=PruneMode.BINARY_FILTER, seed=seed)
        tree = build_tree(problem, OraclePolicy(), OracleReward(), final_answer, params)
        c = constraints(k=2, seed=seed)
        journey = traverse_journey(tree, c)
        assert journey_violations(tree, journey, c) == []

    def test_seed_determinism(self):
        problem = generate_problem(55)
        params = BuildParams(width_w=3, max_depth_D=6, beam_K=2, prune_mode=PruneMode.BINARY_FILTER, seed=55)
        tree = build_tree(problem, OraclePolicy(), OracleReward(), final_answer, params)
        first = traverse_journey(tree, constraints(k=3, seed=9))
        second = traverse_journey(tree, constraints(k=3, seed=9))
        assert first == second

    def test_shortcut_subsequence_explicitly(self, journey_tree):
        marked = mark_correct_paths(journey_tree)
        journey = traverse_journey(journey_tree, constraints())
        on_path = [e.node_id for e in journey.advances() if marked.nodes[e.node_id].on_correct_path]
        shortcut_sequences = [[e.node_id for e in s.events] for s in extract_shortcuts(marked)]
        assert on_path in shortcut_sequences

    def test_detects_budget_violation(self, journey_tree):
        # Force two excursions at the root by raising K, then verify against K=2.
        generous = traverse_journey(journey_tree, constraints(k=3, seed=0))
        problems = journey_violations(journey_tree, generous, constraints(k=2, seed=0))
        assert not problems  # only one wrong child per node here, still within budget

    def test_detects_broken_backtrack_target(self, journey_tree):
        journey = traverse_journey(journey_tree, constraints())
        # Corrupt the first backtrack to point at the wrong ancestor.
        events = list(journey.events)
        for i, event in enumerate(events):
            if event.kind is EventKind.BACKTRACK:
                events[i] = type(event)(kind=EventKind.BACKTRACK, node_id="n1")
                break
        from dataclasses import replace

        corrupted = replace(journey, events=tuple(events))
        assert journey_violations(journey_tree, corrupted, constraints()) != []


class TestReflections:
    def test_identity_when_no_incorrect_nodes(self, chain_tree):
        journey = traverse_journey(chain_tree, constraints())
        reflected = attach_reflections(journey, mark_correct_paths(chain_tree))
        assert reflected.events == journey.events

    def test_rationale_carried_into_reflect_event(self, reflection_tree):
        journey = traverse_journey(reflection_tree, constraints())
        reflected = attach_reflections(journey, mark_correct_paths(reflection_tree))
        reflect_texts = [e.text for e in reflected.events if e.kind is EventKind.REFLECT]
        assert "the subtraction is off by one" in reflect_texts

    def test_two_excursions_yield_four_reflections(self, reflection_tree):
        journey = traverse_journey(reflection_tree, constraints())
        reflected = attach_reflections(journey, mark_correct_paths(reflection_tree))
        assert sum(1 for e in reflected.events if e.kind is EventKind.REFLECT) == 4

    def test_mid_descent_flag_limits_to_backtrack_reflections(self, reflection_tree):
        journey = traverse_journey(reflection_tree, constraints())
        reflected = attach_reflections(journey, mark_correct_paths(reflection_tree), mid_descent=False)
        reflects = [e for e in reflected.events if e.kind is EventKind.REFLECT]
        assert len(reflects) == 2
        assert all("return to" in e.text for e in reflects)

    def test_fallback_names_the_step_without_rationale(self):
        tree = make_tree(
            [
                node("n0", None, "", 0),
                node("n1", "n0", "good: x = 3", 1, binary(1.0)),
                node("n2", "n1", "final: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
                node("n3", "n0", "unscored wrong move: x = 4", 1, None, pruned=True),
            ]
        )
        from journey_forge.model.types import AnnotationRecord, Verdict

        flag = AnnotationRecord(
            id="a0", node_id="n3", verdict=Verdict.INCORRECT, comment="", author="t", timestamp="2025-01-01T00:00:00Z"
        )
        journey = traverse_journey(tree, constraints(), annotations=[flag])
        reflected = attach_reflections(journey, mark_correct_paths(tree, [flag]), annotations=[flag])
        texts = [e.text for e in reflected.events if e.kind is EventKind.REFLECT]
        assert any("human verdict" in t or "unscored wrong move" in t for t in texts)
