"""Canonical JSON schemas and the run-directory layout.

Every document is emitted in one canonical form (sorted keys, two-space
indent, trailing newline), so serialize(deserialize(x)) is byte-identical
for any document this module produced. That property is what lets the
workbench promise it never silently rewrites artifacts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional

from .types import (
    AnnotationRecord,
    BuildParams,
    EventKind,
    LeafStatus,
    LongThought,
    PathKind,
    ProblemInstance,
    ProblemSource,
    Provenance,
    PruneMode,
    ReasoningTree,
    RewardKind,
    StepReward,
    ThoughtStats,
    TraversalEvent,
    TraversalPath,
    TreeNode,
    Verdict,
)


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def canonical_json_line(doc: Any) -> str:
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


# ── document builders ────────────────────────────────────────────────


def problem_to_doc(problem: ProblemInstance) -> dict[str, Any]:
    return {
        "id": problem.id,
        "statement": problem.statement,
        "gold_answer": problem.gold_answer,
        "source": problem.source.value,
        "difficulty_tag": problem.difficulty_tag,
    }


def problem_from_doc(doc: Mapping[str, Any]) -> ProblemInstance:
    return ProblemInstance(
        id=doc["id"],
        statement=doc["statement"],
        gold_answer=doc["gold_answer"],
        source=ProblemSource(doc["source"]),
        difficulty_tag=doc.get("difficulty_tag"),
    )


def params_to_doc(params: BuildParams) -> dict[str, Any]:
    return {
        "width_w": params.width_w,
        "max_depth_D": params.max_depth_D,
        "beam_K": params.beam_K,
        "prune_mode": params.prune_mode.value,
        "seed": params.seed,
    }


def params_from_doc(doc: Mapping[str, Any]) -> BuildParams:
    return BuildParams(
        width_w=doc["width_w"],
        max_depth_D=doc["max_depth_D"],
        beam_K=doc["beam_K"],
        prune_mode=PruneMode(doc["prune_mode"]),
        seed=doc["seed"],
    )


def reward_to_doc(reward: Optional[StepReward]) -> Optional[dict[str, Any]]:
    if reward is None:
        return None
    return {
        "kind": reward.kind.value,
        "value": reward.value,
        "rationale": reward.rationale,
        "provider_id": reward.provider_id,
    }


def reward_from_doc(doc: Optional[Mapping[str, Any]]) -> Optional[StepReward]:
    if doc is None:
        return None
    return StepReward(
        kind=RewardKind(doc["kind"]),
        value=float(doc["value"]),
        rationale=doc.get("rationale"),
        provider_id=doc["provider_id"],
    )


def node_to_doc(node: TreeNode) -> dict[str, Any]:
    return {
        "node_id": node.node_id,
        "parent_id": node.parent_id,
        "step_text": node.step_text,
        "depth": node.depth,
        "reward": reward_to_doc(node.reward),
        "terminal": node.terminal,
        "leaf_status": node.leaf_status.value,
        "on_correct_path": node.on_correct_path,
        "pruned": node.pruned,
        "annotation_overrides": list(node.annotation_overrides),
    }


def node_from_doc(doc: Mapping[str, Any]) -> TreeNode:
    return TreeNode(
        node_id=doc["node_id"],
        parent_id=doc.get("parent_id"),
        step_text=doc["step_text"],
        depth=doc["depth"],
        reward=reward_from_doc(doc.get("reward")),
        terminal=doc["terminal"],
        leaf_status=LeafStatus(doc["leaf_status"]),
        on_correct_path=doc.get("on_correct_path", False),
        pruned=doc.get("pruned", False),
        annotation_overrides=tuple(doc.get("annotation_overrides", ())),
    )


def tree_to_doc(tree: ReasoningTree) -> dict[str, Any]:
    nodes = sorted(tree.nodes.values(), key=lambda n: (n.depth, n.node_id))
    return {
        "problem": problem_to_doc(tree.problem),
        "params": params_to_doc(tree.params),
        "root_id": tree.root_id,
        "policy_call_count": tree.policy_call_count,
        "provenance": tree.provenance.value,
        "nodes": [node_to_doc(n) for n in nodes],
    }


def tree_from_doc(doc: Mapping[str, Any]) -> ReasoningTree:
    nodes = [node_from_doc(d) for d in doc["nodes"]]
    return ReasoningTree(
        problem=problem_from_doc(doc["problem"]),
        params=params_from_doc(doc["params"]),
        root_id=doc["root_id"],
        nodes={n.node_id: n for n in nodes},
        policy_call_count=doc["policy_call_count"],
        provenance=Provenance(doc["provenance"]),
    )


def event_to_doc(event: TraversalEvent) -> dict[str, Any]:
    return {"kind": event.kind.value, "node_id": event.node_id, "text": event.text}


def event_from_doc(doc: Mapping[str, Any]) -> TraversalEvent:
    return TraversalEvent(kind=EventKind(doc["kind"]), node_id=doc["node_id"], text=doc.get("text"))


def path_to_doc(path: TraversalPath) -> dict[str, Any]:
    return {
        "tree_ref": path.tree_ref,
        "kind": path.kind.value,
        "events": [event_to_doc(e) for e in path.events],
        "trial_budget_K": path.trial_budget_K,
        "seed": path.seed,
    }


def path_from_doc(doc: Mapping[str, Any]) -> TraversalPath:
    return TraversalPath(
        tree_ref=doc["tree_ref"],
        kind=PathKind(doc["kind"]),
        events=tuple(event_from_doc(d) for d in doc["events"]),
        trial_budget_K=doc["trial_budget_K"],
        seed=doc["seed"],
    )


def stats_to_doc(stats: ThoughtStats) -> dict[str, Any]:
    return {
        "token_count": stats.token_count,
        "line_count": stats.line_count,
        "avg_words_per_line": stats.avg_words_per_line,
        "keyword_counts": dict(sorted(stats.keyword_counts.items())),
        "reflection_marker_count": stats.reflection_marker_count,
        "tokenizer_scheme": stats.tokenizer_scheme,
    }


def stats_from_doc(doc: Mapping[str, Any]) -> ThoughtStats:
    return ThoughtStats(
        token_count=doc["token_count"],
        line_count=doc["line_count"],
        avg_words_per_line=doc["avg_words_per_line"],
        keyword_counts=dict(doc["keyword_counts"]),
        reflection_marker_count=doc["reflection_marker_count"],
        tokenizer_scheme=doc["tokenizer_scheme"],
    )


def thought_to_doc(thought: LongThought) -> dict[str, Any]:
    return {
        "traversal_ref": thought.traversal_ref,
        "draft_text": thought.draft_text,
        "polished_text": thought.polished_text,
        "step_anchors": [[i, a] for i, a in thought.step_anchors],
        "preservation_score": thought.preservation_score,
        "stats": stats_to_doc(thought.stats),
    }


def thought_from_doc(doc: Mapping[str, Any]) -> LongThought:
    return LongThought(
        traversal_ref=doc["traversal_ref"],
        draft_text=doc["draft_text"],
        polished_text=doc.get("polished_text"),
        step_anchors=tuple((i, a) for i, a in doc["step_anchors"]),
        preservation_score=doc["preservation_score"],
        stats=stats_from_doc(doc["stats"]),
    )


def annotation_to_doc(record: AnnotationRecord) -> dict[str, Any]:
    return {
        "id": record.id,
        "node_id": record.node_id,
        "verdict": record.verdict.value,
        "comment": record.comment,
        "author": record.author,
        "timestamp": record.timestamp,
    }


def annotation_from_doc(doc: Mapping[str, Any]) -> AnnotationRecord:
    return AnnotationRecord(
        id=doc["id"],
        node_id=doc["node_id"],
        verdict=Verdict(doc["verdict"]),
        comment=doc["comment"],
        author=doc["author"],
        timestamp=doc["timestamp"],
    )


# ── file helpers ─────────────────────────────────────────────────────


def dump_json(path: Path, doc: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(doc), encoding="utf-8")


def load_json(path: Path) -> Any:
    return json.loads(path.read_text(encoding="utf-8"))


def append_jsonl(path: Path, doc: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as handle:
        handle.write(canonical_json_line(doc) + "\n")


def read_jsonl(path: Path) -> list[Any]:
    if not path.exists():
        return []
    docs = []
    with path.open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                docs.append(json.loads(line))
    return docs


def load_annotations(path: Path) -> list[AnnotationRecord]:
    return [annotation_from_doc(doc) for doc in read_jsonl(path)]


# ── run directory layout ─────────────────────────────────────────────


@dataclass(frozen=True)
class RunPaths:
    """File layout of one run directory under the runs root."""

    root: Path

    @property
    def problem(self) -> Path:
        return self.root / "problem.json"

    @property
    def tree(self) -> Path:
        return self.root / "tree.json"

    @property
    def annotations(self) -> Path:
        return self.root / "annotations.jsonl"

    @property
    def meta(self) -> Path:
        return self.root / "meta.json"

    def traversal(self, kind: str, seed: int) -> Path:
        return self.root / f"traversal.{kind}.{seed}.json"

    def thought(self, kind: str, seed: int) -> Path:
        return self.root / f"thought.{kind}.{seed}.json"

    def previews_dir(self) -> Path:
        return self.root / "previews"

    def traversal_files(self) -> list[Path]:
        return sorted(self.root.glob("traversal.*.json"))

    def thought_files(self) -> list[Path]:
        return sorted(self.root.glob("thought.*.json"))


def run_paths(runs_root: Path | str, run_id: str) -> RunPaths:
    return RunPaths(Path(runs_root) / run_id)


def artifact_ref(kind: str, seed: int) -> str:
    """Reference name shared by traversal and thought files of one derivation."""
    return f"{kind}.{seed}"


def parse_artifact_name(filename: str) -> tuple[str, str, int]:
    """Split ``traversal.journey.7.json`` into (category, kind, seed)."""
    stem = filename[: -len(".json")] if filename.endswith(".json") else filename
    category, kind, seed = stem.split(".", 2)
    return category, kind, int(seed)


def write_run_inputs(paths: RunPaths, problem: ProblemInstance, tree: ReasoningTree, meta: Mapping[str, Any]) -> None:
    dump_json(paths.problem, problem_to_doc(problem))
    dump_json(paths.tree, tree_to_doc(tree))
    dump_json(paths.meta, dict(meta))


def iter_run_dirs(runs_root: Path | str) -> Iterable[Path]:
    root = Path(runs_root)
    if not root.exists():
        return []
    return sorted(p for p in root.iterdir() if p.is_dir())
