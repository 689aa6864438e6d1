from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import binary, make_tree, node, scalar
from journey_forge.model.ops import (
    correct_leaves,
    effective_reward,
    expected_generation_count,
    leaf_effectively_correct,
    per_iteration_generation_total,
    validate_tree,
)
from journey_forge.model.types import AnnotationRecord, LeafStatus, RewardKind, Verdict


def annotation(record_id: str, node_id: str, verdict: Verdict, comment: str = "") -> AnnotationRecord:
    return AnnotationRecord(
        id=record_id, node_id=node_id, verdict=verdict, comment=comment, author="tester", timestamp="2025-01-01T00:00:00Z"
    )


class TestValidateTree:
    def test_consistent_tree_yields_empty_report(self, chain_tree):
        assert validate_tree(chain_tree).ok

    def test_parent_pointing_at_descendant_is_a_cycle(self):
        tree = make_tree(
            [
                node("n0", None, "", 0),
                node("n1", "n2", "step a", 1),  # parent is its own child
                node("n2", "n1", "step b", 2),
            ]
        )
        rules = {v.rule for v in validate_tree(tree).violations}
        assert "cycle" in rules

    def test_correct_nonterminal_is_status_mismatch(self):
        with pytest.raises(ValueError):
            # The type itself refuses the combination.
            node("n1", "n0", "step", 1, terminal=False, status=LeafStatus.CORRECT)
        # Bypass construction-time checks via object.__setattr__ to reach the validator.
        bad = node("n1", "n0", "step", 1, terminal=True, status=LeafStatus.CORRECT)
        object.__setattr__(bad, "terminal", False)
        tree = make_tree([node("n0", None, "", 0), bad])
        rules = {v.rule for v in validate_tree(tree).violations}
        assert "status/terminal mismatch" in rules

    def test_depth_mismatch_detected(self):
        tree = make_tree([node("n0", None, "", 0), node("n1", "n0", "step", 1)])
        skewed = node("n2", "n1", "next", 2)
        object.__setattr__(skewed, "depth", 3)
        tree = tree.with_nodes({"n2": skewed})
        rules = {v.rule for v in validate_tree(tree).violations}
        assert "depth-mismatch" in rules

    def test_on_policy_depth_population_bound(self):
        # width_w * beam_K = 4; put five nodes at depth 1.
        nodes = [node("n0", None, "", 0)] + [node(f"n{i}", "n0", f"step {i}", 1) for i in range(1, 6)]
        rules = {v.rule for v in validate_tree(make_tree(nodes)).violations}
        assert "depth-population" in rules


class TestEffectiveReward:
    def test_no_annotations_returns_stored_reward(self):
        n = node("n1", "n0", "step", 1, scalar(0.9))
        assert effective_reward(n, []) == scalar(0.9)

    def test_annotation_shadows_scalar_reward(self):
        n = node("n1", "n0", "step", 1, scalar(0.9))
        resolved = effective_reward(n, [annotation("a0", "n1", Verdict.INCORRECT, "sign error")])
        assert resolved is not None
        assert resolved.kind is RewardKind.BINARY
        assert resolved.value == 0.0
        assert resolved.rationale == "sign error"

    def test_latest_annotation_wins(self):
        n = node("n1", "n0", "step", 1, scalar(0.9))
        log = [annotation("a0", "n1", Verdict.CORRECT), annotation("a1", "n1", Verdict.INCORRECT)]
        resolved = effective_reward(n, log)
        assert resolved.value == 0.0

    def test_unknown_sentinel_when_nothing_known(self):
        n = node("n1", "n0", "step", 1, reward=None)
        assert effective_reward(n, []) is None

    def test_pure_in_annotation_order(self):
        n = node("n1", "n0", "step", 1)
        log = [annotation("a0", "n1", Verdict.INCORRECT), annotation("a1", "n1", Verdict.CORRECT)]
        assert effective_reward(n, log).value == 1.0
        assert effective_reward(n, list(reversed(log))).value == 0.0


class TestLeafCorrectness:
    def test_annotation_flips_leaf(self, twin_tree):
        leaf = twin_tree.nodes["n2"]
        assert leaf_effectively_correct(leaf, [])
        assert not leaf_effectively_correct(leaf, [annotation("a0", "n2", Verdict.INCORRECT)])

    def test_correct_leaves_ordering(self, twin_tree):
        assert [n.node_id for n in correct_leaves(twin_tree)] == ["n2", "n3"]


class TestGenerationCount:
    def test_unpruned_formula_w3_d10(self):
        # (3**10 - 1) / (3 - 1) evaluated by hand: 59048 / 2.
        assert expected_generation_count(3, 1, 10, pruned=False) == 29524

    def test_pruned_formula_w3_k2_d10(self):
        assert expected_generation_count(3, 2, 10, pruned=True) == 60

    def test_single_iteration_boundary(self):
        assert expected_generation_count(3, 1, 1, pruned=False) == 1

    def test_unpruned_requires_w_at_least_two(self):
        with pytest.raises(ValueError):
            expected_generation_count(1, 1, 3, pruned=False)

    def test_alternative_convention_exposed(self):
        # 3 + 9 + 27 = 39 for w=3, D=3.
        assert per_iteration_generation_total(3, 3) == 39
        assert per_iteration_generation_total(1, 5) == 5

    @given(w=st.integers(2, 6), k=st.integers(1, 5), d=st.integers(1, 12))
    def test_pruned_never_exceeds_unpruned_beyond_beam_coverage(self, w, k, d):
        # Geometric sum via direct summation as an independent oracle.
        assert expected_generation_count(w, k, d, pruned=False) == sum(w**i for i in range(d))
        assert expected_generation_count(w, k, d, pruned=True) == w * k * d

    def test_huge_exponents_do_not_wrap(self):
        value = expected_generation_count(10, 1, 50, pruned=False)
        assert value == (10**50 - 1) // 9


class TestMarkingExamples:
    def test_single_correct_leaf_flags_full_path(self, chain_tree):
        from journey_forge.journey.derive import mark_correct_paths

        marked = mark_correct_paths(chain_tree)
        flagged = {n.node_id for n in marked.nodes.values() if n.on_correct_path}
        assert flagged == {"n0", "n1", "n2", "n3"}

    def test_no_correct_leaf_flags_nothing(self):
        from journey_forge.journey.derive import mark_correct_paths

        tree = make_tree([node("n0", None, "", 0), node("n1", "n0", "step", 1)])
        marked = mark_correct_paths(tree)
        assert not any(n.on_correct_path for n in marked.nodes.values())

    def test_two_correct_leaves_flag_union(self, twin_tree):
        from journey_forge.journey.derive import mark_correct_paths

        marked = mark_correct_paths(twin_tree)
        flagged = {n.node_id for n in marked.nodes.values() if n.on_correct_path}
        assert flagged == {"n0", "n1", "n2", "n3"}
