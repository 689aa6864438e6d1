#!/usr/bin/env python3
"""Regenerate frontend test fixtures from the real workbench service.

Materializes the standard fixture runs, drives the HTTP API with a test
client, and snapshots the responses the UI consumes. Run from the repo
root after changing service schemas:

    python3 frontend/scripts/generate_fixtures.py
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from journey_forge.journey.derive import attach_reflections, extract_shortcuts, mark_correct_paths, traverse_journey
from journey_forge.model.serialize import RunPaths, dump_json, path_to_doc, problem_to_doc, thought_to_doc, tree_to_doc
from journey_forge.model.types import (
    BuildParams,
    LeafStatus,
    ProblemInstance,
    ProblemSource,
    Provenance,
    PruneMode,
    ReasoningTree,
    RewardKind,
    StepReward,
    TraversalConstraints,
    TreeNode,
)
from journey_forge.thought.assemble import draft_long_thought
from journey_forge.workbench.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def binary(value: float, rationale: str = "fixture verdict") -> StepReward:
    return StepReward(kind=RewardKind.BINARY, value=value, rationale=rationale, provider_id="fixture")


def node(node_id, parent_id, step, depth, reward=None, terminal=False, status=LeafStatus.OPEN, pruned=False) -> TreeNode:
    return TreeNode(
        node_id=node_id, parent_id=parent_id, step_text=step, depth=depth,
        reward=reward, terminal=terminal, leaf_status=status, pruned=pruned,
    )


def make_tree(nodes: list[TreeNode]) -> ReasoningTree:
    return ReasoningTree(
        problem=ProblemInstance(id="fix-prob", statement="Solve for x: 2x + 4 = 10", gold_answer="3", source=ProblemSource.SYNTHETIC),
        params=BuildParams(width_w=2, max_depth_D=4, beam_K=2, prune_mode=PruneMode.BINARY_FILTER, seed=0),
        root_id=nodes[0].node_id,
        nodes={n.node_id: n for n in nodes},
        policy_call_count=0,
        provenance=Provenance.ON_POLICY,
    )


def single_leaf_tree() -> ReasoningTree:
    return make_tree(
        [
            node("n0", None, "", 0),
            node("n1", "n0", "Subtract 4 from both sides: 2x = 6", 1, binary(1.0)),
            node("n2", "n0", "Subtract 4 from both sides: 2x = 7", 1, binary(0.0, "the subtraction is off by one"), pruned=True),
            node("n3", "n1", "Divide both sides by 2: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
            node("n4", "n1", "Divide both sides by 2: x = 4", 2, binary(0.0, "dividing 6 by 2 gives 3, not 4"), pruned=True),
            node("n5", "n2", "So the solution is x = 3.5. \\boxed{3.5}", 2, binary(0.0, "follows from a broken step"), terminal=True, status=LeafStatus.INCORRECT),
        ]
    )


def twin_tree() -> ReasoningTree:
    return make_tree(
        [
            node("n0", None, "", 0),
            node("n1", "n0", "Subtract 4 from both sides: 2x = 6", 1, binary(1.0)),
            node("n2", "n1", "Divide both sides by 2: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
            node("n3", "n1", "Halve both sides: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
            node("n4", "n1", "Divide both sides by 2: x = 8", 2, binary(0.0, "dividing 6 by 2 gives 3, not 8"), pruned=True),
        ]
    )


def materialize(runs_root: Path, run_id: str, tree: ReasoningTree, iteration_tag: str) -> None:
    paths = RunPaths(runs_root / run_id)
    dump_json(paths.problem, problem_to_doc(tree.problem))
    dump_json(paths.tree, tree_to_doc(tree))
    dump_json(paths.meta, {"run_id": run_id, "iteration_tag": iteration_tag, "problem_id": tree.problem.id})
    marked = mark_correct_paths(tree)
    shortcut = extract_shortcuts(marked)[0]
    dump_json(paths.traversal("shortcut", 0), path_to_doc(shortcut))
    dump_json(paths.thought("shortcut", 0), thought_to_doc(draft_long_thought(shortcut, marked, seed=0, traversal_ref="traversal.shortcut.0")))
    journey = attach_reflections(traverse_journey(tree, TraversalConstraints(max_trials_K=2, seed=0)), marked)
    dump_json(paths.traversal("journey", 0), path_to_doc(journey))
    dump_json(paths.thought("journey", 0), thought_to_doc(draft_long_thought(journey, marked, seed=0, traversal_ref="traversal.journey.0")))


def snap(name: str, payload) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {FIXTURES / name}")


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        runs_root = Path(tmp) / "runs"
        materialize(runs_root, "run-single", single_leaf_tree(), "iter1")
        materialize(runs_root, "run-twin", twin_tree(), "iter2")
        client = TestClient(create_app(runs_root))

        snap("runs.json", client.get("/runs").json())
        snap("tree.single.json", client.get("/runs/run-single/tree").json())
        snap("tree.twin.json", client.get("/runs/run-twin/tree").json())
        snap("thoughts.twin.json", client.get("/runs/run-twin/thoughts").json())
        snap("traversals.twin.json", client.get("/runs/run-twin/traversals").json())
        snap("thoughts.single.json", client.get("/runs/run-single/thoughts").json())

        annotation = client.post(
            "/runs/run-twin/annotations",
            json={"node_id": "n2", "verdict": "incorrect", "comment": "human says the division is off", "author": "reviewer"},
        )
        snap("annotation.response.json", annotation.json())
        snap("tree.twin.annotated.json", client.get("/runs/run-twin/tree").json())
        snap("rederive.twin.json", client.post("/runs/run-twin/rederive", json={"trials": 2, "seed": 0}).json())


if __name__ == "__main__":
    main()
