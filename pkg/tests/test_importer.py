from __future__ import annotations

import json

from journey_forge.treebuilder.importer import import_labeled_tree
from journey_forge.model.ops import children_index, correct_leaves, validate_tree
from journey_forge.model.types import LeafStatus, Provenance


def doc(solutions):
    return {
        "problem": {"id": "imp-1", "statement": "Solve for x: 2x + 4 = 10", "gold_answer": "3"},
        "solutions": solutions,
    }


STEP_SUB = "Subtract 4 from both sides: 2x = 6"
STEP_DIV_OK = "Divide both sides by 2: x = 3"
STEP_DIV_BAD = "Divide both sides by 2: x = 4"
STEP_BOX = "So the solution is x = 3. \\boxed{3}"


class TestImport:
    def test_all_positive_chain(self):
        result = import_labeled_tree(doc([{"steps": [
            {"text": STEP_SUB, "rating": 1},
            {"text": STEP_DIV_OK, "rating": 1},
            {"text": STEP_BOX, "rating": 1},
        ]}]))
        tree = result.tree
        assert tree.provenance is Provenance.OFF_POLICY_IMPORT
        assert validate_tree(tree).ok
        chain = [n for n in tree.nodes.values() if n.parent_id is not None]
        assert all(n.reward is not None and n.reward.value == 1.0 for n in chain)
        leaves = correct_leaves(tree)
        assert len(leaves) == 1 and leaves[0].terminal

    def test_negative_rating_maps_to_zero(self):
        result = import_labeled_tree(doc([{"steps": [
            {"text": STEP_SUB, "rating": "+"},
            {"text": STEP_DIV_BAD, "rating": "-"},
        ]}]))
        nodes_by_depth = sorted(
            (n for n in result.tree.nodes.values() if n.parent_id is not None), key=lambda n: n.depth
        )
        assert nodes_by_depth[0].reward.value == 1.0
        assert nodes_by_depth[1].reward.value == 0.0
        assert nodes_by_depth[1].leaf_status is LeafStatus.INCORRECT  # x = 4 fails the checker

    def test_shared_prefix_merges_with_branch_at_divergence(self):
        solutions = [
            {"steps": [{"text": STEP_SUB, "rating": 1}, {"text": STEP_DIV_OK, "rating": 1}, {"text": STEP_BOX, "rating": 1}]},
            {"steps": [{"text": STEP_SUB, "rating": 1}, {"text": STEP_DIV_BAD, "rating": -1}]},
        ]
        result = import_labeled_tree(doc(solutions))
        tree = result.tree

        # Independent prefix-merge oracle: distinct normalized step prefixes.
        prefixes = set()
        for solution in solutions:
            steps = [" ".join(s["text"].split()) for s in solution["steps"]]
            for i in range(1, len(steps) + 1):
                prefixes.add(tuple(steps[:i]))
        assert len(tree.nodes) == len(prefixes) + 1  # + root

        kids = children_index(tree)
        sub_node = next(n for n in tree.nodes.values() if n.step_text == STEP_SUB)
        assert len(kids[sub_node.node_id]) == 2  # branch at first divergence

    def test_unratable_rating_reported_and_kept(self):
        result = import_labeled_tree(doc([{"steps": [{"text": STEP_SUB, "rating": "??"}]}]))
        assert result.report.unratable == [{"solution": 0, "step": 0, "rating": "'??'"}]
        imported = next(n for n in result.tree.nodes.values() if n.parent_id is not None)
        assert imported.reward is None

    def test_neutral_rating_configurable(self):
        absent = import_labeled_tree(doc([{"steps": [{"text": STEP_SUB, "rating": 0}]}]))
        node = next(n for n in absent.tree.nodes.values() if n.parent_id is not None)
        assert node.reward is None
        mapped = import_labeled_tree(doc([{"steps": [{"text": STEP_SUB, "rating": 0}]}]), neutral_value=1.0)
        node = next(n for n in mapped.tree.nodes.values() if n.parent_id is not None)
        assert node.reward is not None and node.reward.value == 1.0

    def test_reads_from_file(self, tmp_path):
        source = tmp_path / "labeled.json"
        source.write_text(json.dumps(doc([{"steps": [{"text": STEP_BOX, "rating": 1}]}])))
        result = import_labeled_tree(source)
        assert len(result.tree.nodes) == 2
