"""Run-directory store backing the workbench service.

All state lives in plain files under the runs root; the store adds
per-run write serialization, annotation validation, and re-derivation
previews. Existing tree/traversal/thought files are never rewritten:
re-derivation lands in a preview directory and promotion only moves the
"current" pointers kept in meta.json.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from ..analytics.filters import Predicate, ThoughtCase, filter_thoughts
from ..journey.derive import NoShortcutError, attach_reflections, mark_correct_paths, traverse_journey
from ..model.ops import correct_leaves, effective_reward
from ..model.serialize import (
    RunPaths,
    annotation_to_doc,
    append_jsonl,
    canonical_json,
    dump_json,
    load_annotations,
    load_json,
    parse_artifact_name,
    path_to_doc,
    problem_from_doc,
    read_jsonl,
    reward_to_doc,
    thought_to_doc,
    tree_from_doc,
)
from ..model.types import AnnotationRecord, ReasoningTree, RunSummary, TraversalConstraints, Verdict
from ..thought.assemble import draft_long_thought


class UnknownRunError(KeyError):
    pass


class UnknownNodeError(ValueError):
    pass


@dataclass
class RunListing:
    summaries: list[RunSummary]
    warnings: list[dict[str, str]] = field(default_factory=list)


@dataclass
class RederivePreview:
    preview_id: str
    traversal_doc: dict[str, Any]
    thought_doc: dict[str, Any]
    traversal_path: Path
    thought_path: Path


class RunStore:
    def __init__(self, root: Path | str):
        self.root = Path(root)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    # ── plumbing ─────────────────────────────────────────────────────

    def _lock(self, run_id: str) -> threading.Lock:
        with self._locks_guard:
            if run_id not in self._locks:
                self._locks[run_id] = threading.Lock()
            return self._locks[run_id]

    def paths(self, run_id: str) -> RunPaths:
        run_dir = self.root / run_id
        if not run_dir.is_dir():
            raise UnknownRunError(run_id)
        return RunPaths(run_dir)

    def load_tree(self, run_id: str) -> ReasoningTree:
        return tree_from_doc(load_json(self.paths(run_id).tree))

    def annotations(self, run_id: str) -> list[AnnotationRecord]:
        return load_annotations(self.paths(run_id).annotations)

    # ── listing ──────────────────────────────────────────────────────

    def list_runs(self, predicates: Sequence[Predicate] = ()) -> RunListing:
        listing = RunListing(summaries=[])
        if not self.root.exists():
            listing.warnings.append({"runs_root": str(self.root), "warning": "runs root does not exist"})
            return listing
        for run_dir in sorted(p for p in self.root.iterdir() if p.is_dir()):
            try:
                summary = self._summarize(run_dir)
            except Exception as exc:
                listing.warnings.append({"run_id": run_dir.name, "warning": f"unreadable run: {exc}"})
                continue
            if predicates and not self._summary_matches(run_dir, summary, predicates):
                continue
            listing.summaries.append(summary)
        return listing

    def _summarize(self, run_dir: Path) -> RunSummary:
        paths = RunPaths(run_dir)
        tree = tree_from_doc(load_json(paths.tree))
        annotations = load_annotations(paths.annotations)
        meta = load_json(paths.meta) if paths.meta.exists() else {}
        variants = sorted({parse_artifact_name(p.name)[1] for p in paths.thought_files()})
        return RunSummary(
            run_id=run_dir.name,
            problem_id=tree.problem.id,
            iteration_tag=str(meta.get("iteration_tag", "")),
            has_correct_leaf=bool(correct_leaves(tree, annotations)),
            thought_variants=tuple(variants),
            node_count=len(tree.nodes),
            annotation_count=len(annotations),
        )

    def _summary_matches(self, run_dir: Path, summary: RunSummary, predicates: Sequence[Predicate]) -> bool:
        cases = self._thought_cases(run_dir, summary)
        for predicate in predicates:
            if predicate.name == "answer-correct":
                if not summary.has_correct_leaf:
                    return False
            elif predicate.name == "answer-incorrect":
                if summary.has_correct_leaf:
                    return False
            elif predicate.name == "iteration-tag":
                if summary.iteration_tag != predicate.arg:
                    return False
            else:
                if not filter_thoughts(cases, [predicate]):
                    return False
        return True

    def _thought_cases(self, run_dir: Path, summary: RunSummary) -> list[ThoughtCase]:
        paths = RunPaths(run_dir)
        cases = []
        for thought_file in paths.thought_files():
            doc = load_json(thought_file)
            text = doc.get("polished_text") or doc.get("draft_text", "")
            cases.append(
                ThoughtCase(
                    ref=f"{summary.run_id}/{thought_file.name}",
                    text=text,
                    answer_correct=summary.has_correct_leaf,
                    iteration_tag=summary.iteration_tag,
                )
            )
        return cases

    def thought_cases(self, run_id: str) -> list[ThoughtCase]:
        run_dir = self.root / run_id
        if not run_dir.is_dir():
            raise UnknownRunError(run_id)
        return self._thought_cases(run_dir, self._summarize(run_dir))

    # ── tree with effective rewards ──────────────────────────────────

    def tree_document(self, run_id: str) -> tuple[dict[str, Any], int]:
        """Stored tree.json content plus per-node effective rewards.

        Annotations are read under the run lock, so the document is a
        consistent snapshot; the returned offset is the number of
        annotation records it reflects.
        """
        paths = self.paths(run_id)
        with self._lock(run_id):
            doc = load_json(paths.tree)
            annotations = load_annotations(paths.annotations)
        tree = tree_from_doc(doc)
        for node_doc in doc["nodes"]:
            node = tree.nodes[node_doc["node_id"]]
            node_doc["effective_reward"] = reward_to_doc(effective_reward(node, annotations))
        return doc, len(annotations)

    # ── annotations ──────────────────────────────────────────────────

    def post_annotation(
        self,
        run_id: str,
        node_id: str,
        verdict: Verdict | str,
        comment: str = "",
        author: str = "",
        record_id: Optional[str] = None,
        timestamp: Optional[str] = None,
    ) -> AnnotationRecord:
        """Append one annotation; the append is atomic and ordered per run."""
        paths = self.paths(run_id)
        tree = self.load_tree(run_id)
        if node_id not in tree.nodes:
            raise UnknownNodeError(f"run {run_id} has no node {node_id}")
        verdict = Verdict(verdict)
        with self._lock(run_id):
            existing = len(read_jsonl(paths.annotations))
            record = AnnotationRecord(
                id=record_id or f"a{existing:06d}",
                node_id=node_id,
                verdict=verdict,
                comment=comment,
                author=author or "anonymous",
                timestamp=timestamp or time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            )
            append_jsonl(paths.annotations, annotation_to_doc(record))
        return record

    # ── re-derivation previews ───────────────────────────────────────

    def rederive(self, run_id: str, constraints: TraversalConstraints, mid_descent: bool = True) -> RederivePreview:
        """Derive a fresh journey + draft thought under current annotations.

        Artifacts land under ``previews/<preview-id>/`` with seed-suffixed
        names; originals are untouched. One re-derivation runs per run at a
        time.
        """
        paths = self.paths(run_id)
        with self._lock(run_id):
            tree = tree_from_doc(load_json(paths.tree))
            annotations = load_annotations(paths.annotations)
            if not correct_leaves(tree, annotations):
                raise NoShortcutError("no shortcut available: annotations leave no correct leaf")
            marked = mark_correct_paths(tree, annotations)
            journey = traverse_journey(tree, constraints, annotations)
            reflected = attach_reflections(journey, marked, annotations, mid_descent=mid_descent)
            thought = draft_long_thought(reflected, marked, seed=constraints.seed)

            previews_dir = paths.previews_dir()
            existing = sorted(previews_dir.glob("rederive-*")) if previews_dir.exists() else []
            preview_id = f"rederive-{constraints.seed}-{len(existing) + 1:03d}"
            preview_dir = previews_dir / preview_id
            traversal_path = preview_dir / f"traversal.journey.{constraints.seed}.json"
            thought_path = preview_dir / f"thought.journey.{constraints.seed}.json"
            traversal_doc = path_to_doc(reflected)
            thought_doc = thought_to_doc(thought)
            dump_json(traversal_path, traversal_doc)
            dump_json(thought_path, thought_doc)
        return RederivePreview(
            preview_id=preview_id,
            traversal_doc=traversal_doc,
            thought_doc=thought_doc,
            traversal_path=traversal_path,
            thought_path=thought_path,
        )

    def promote_preview(self, run_id: str, preview_id: str) -> dict[str, Any]:
        """Point meta.json's "current" entries at a preview's artifacts.

        Promotion never rewrites artifact files; it only updates pointers,
        so the original derivation stays addressable forever.
        """
        paths = self.paths(run_id)
        preview_dir = paths.previews_dir() / preview_id
        if not preview_dir.is_dir():
            raise UnknownRunError(f"run {run_id} has no preview {preview_id}")
        with self._lock(run_id):
            meta = load_json(paths.meta) if paths.meta.exists() else {}
            traversals = sorted(preview_dir.glob("traversal.*.json"))
            thoughts = sorted(preview_dir.glob("thought.*.json"))
            meta["current"] = {
                "promoted_from": preview_id,
                "traversal": str(traversals[0].relative_to(paths.root)) if traversals else None,
                "thought": str(thoughts[0].relative_to(paths.root)) if thoughts else None,
            }
            paths.meta.write_text(canonical_json(meta), encoding="utf-8")
        return meta

    # ── artifact listings ────────────────────────────────────────────

    def traversal_docs(self, run_id: str) -> list[dict[str, Any]]:
        paths = self.paths(run_id)
        return [{"name": p.name, "document": load_json(p)} for p in paths.traversal_files()]

    def thought_docs(self, run_id: str) -> list[dict[str, Any]]:
        paths = self.paths(run_id)
        return [{"name": p.name, "document": load_json(p)} for p in paths.thought_files()]

    def problem_doc(self, run_id: str) -> dict[str, Any]:
        paths = self.paths(run_id)
        return load_json(paths.problem)

    def annotation_docs(self, run_id: str) -> list[dict[str, Any]]:
        paths = self.paths(run_id)
        return read_jsonl(paths.annotations)


def problem_from_run(store: RunStore, run_id: str):
    return problem_from_doc(store.problem_doc(run_id))
