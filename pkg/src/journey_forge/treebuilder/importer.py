"""Off-policy import of pre-labeled step trees.

The import schema is a JSON document with per-solution step lists and
per-step human ratings::

    {
      "problem": {"id": ..., "statement": ..., "gold_answer": ...},
      "solutions": [
        {"steps": [{"text": "...", "rating": 1}, {"text": "...", "rating": -1}]},
        ...
      ]
    }

Solutions sharing a step prefix are merged into one tree, branching at the
first divergence. Ratings map to binary step rewards (positive -> 1,
negative -> 0, neutral -> configurable, default: no reward).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Optional

from ..model.ids import IdAllocator, scope_prefix
from ..model.types import (
    BuildParams,
    LeafStatus,
    ProblemInstance,
    ProblemSource,
    Provenance,
    PruneMode,
    ReasoningTree,
    RewardKind,
    StepReward,
    TreeNode,
)
from ..providers.answer_check import final_answer
from ..providers.base import normalize_candidate

PROVIDER_ID = "import:step-ratings"

_POSITIVE = {1, "1", "+", "+1", "positive", "correct"}
_NEGATIVE = {-1, "-1", "-", "negative", "incorrect"}
_NEUTRAL = {0, "0", "neutral"}


@dataclass
class ImportReport:
    unratable: list[dict[str, Any]] = field(default_factory=list)

    def note_unratable(self, solution: int, step: int, raw: Any) -> None:
        self.unratable.append({"solution": solution, "step": step, "rating": repr(raw)})


@dataclass
class ImportResult:
    tree: ReasoningTree
    report: ImportReport


def _rating_to_reward(raw: Any, neutral_value: Optional[float]) -> tuple[Optional[StepReward], bool]:
    """Map one rating encoding to a reward; the flag reports unratable input."""
    key = raw if isinstance(raw, int) else str(raw).strip().lower()
    if key in _POSITIVE:
        value: Optional[float] = 1.0
    elif key in _NEGATIVE:
        value = 0.0
    elif key in _NEUTRAL:
        value = neutral_value
    else:
        return None, True
    if value is None:
        return None, False
    return (
        StepReward(kind=RewardKind.BINARY, value=value, rationale=f"human step rating {raw!r}", provider_id=PROVIDER_ID),
        False,
    )


def import_labeled_tree(
    source: Path | str | Mapping[str, Any],
    neutral_value: Optional[float] = None,
    checker: Callable[[str, str], bool] = final_answer,
) -> ImportResult:
    """Build a provenance=off-policy tree from a labeled step-tree file."""
    doc: Mapping[str, Any]
    if isinstance(source, (str, Path)):
        doc = json.loads(Path(source).read_text(encoding="utf-8"))
    else:
        doc = source

    problem_doc = doc["problem"]
    problem = ProblemInstance(
        id=problem_doc["id"],
        statement=problem_doc["statement"],
        gold_answer=problem_doc["gold_answer"],
        source=ProblemSource(problem_doc.get("source", "imported")),
        difficulty_tag=problem_doc.get("difficulty_tag"),
    )
    solutions = doc.get("solutions", [])

    allocator = IdAllocator(scope_prefix(problem.id, "import"))
    root_id = allocator.allocate()
    nodes: dict[str, TreeNode] = {
        root_id: TreeNode(node_id=root_id, parent_id=None, step_text="", depth=0, terminal=False, leaf_status=LeafStatus.OPEN)
    }
    # Trie over normalized step text: (parent_id, normalized step) -> node_id.
    edge_index: dict[tuple[str, str], str] = {}
    report = ImportReport()
    terminal_ids: set[str] = set()

    for solution_idx, solution in enumerate(solutions):
        parent_id = root_id
        steps = solution.get("steps", [])
        for step_idx, step in enumerate(steps):
            text = step["text"]
            key = (parent_id, normalize_candidate(text))
            node_id = edge_index.get(key)
            if node_id is None:
                node_id = allocator.allocate()
                reward, unratable = _rating_to_reward(step.get("rating"), neutral_value)
                if unratable:
                    report.note_unratable(solution_idx, step_idx, step.get("rating"))
                nodes[node_id] = TreeNode(
                    node_id=node_id,
                    parent_id=parent_id,
                    step_text=text,
                    depth=nodes[parent_id].depth + 1,
                    reward=reward,
                    terminal=False,
                    leaf_status=LeafStatus.OPEN,
                )
                edge_index[key] = node_id
            if step_idx == len(steps) - 1:
                terminal_ids.add(node_id)
            parent_id = node_id

    for node_id in terminal_ids:
        node = nodes[node_id]
        correct = checker(node.step_text, problem.gold_answer)
        nodes[node_id] = TreeNode(
            node_id=node.node_id,
            parent_id=node.parent_id,
            step_text=node.step_text,
            depth=node.depth,
            reward=node.reward,
            terminal=True,
            leaf_status=LeafStatus.CORRECT if correct else LeafStatus.INCORRECT,
        )

    max_depth = max(n.depth for n in nodes.values())
    max_branch = 1
    child_counts: dict[str, int] = {}
    for node in nodes.values():
        if node.parent_id is not None:
            child_counts[node.parent_id] = child_counts.get(node.parent_id, 0) + 1
    if child_counts:
        max_branch = max(child_counts.values())

    tree = ReasoningTree(
        problem=problem,
        params=BuildParams(
            width_w=max(1, max_branch),
            max_depth_D=max(1, max_depth),
            beam_K=max(1, max_branch),
            prune_mode=PruneMode.BINARY_FILTER,
            seed=0,
        ),
        root_id=root_id,
        nodes=nodes,
        policy_call_count=0,
        provenance=Provenance.OFF_POLICY_IMPORT,
    )
    return ImportResult(tree=tree, report=report)
