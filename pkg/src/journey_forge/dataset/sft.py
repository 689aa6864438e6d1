"""SFT record emission from run directories.

One record per (problem, traversal): the prompt is the problem statement
and the response is the thought's output text (polished when accepted,
draft otherwise). Journey and shortcut records emitted from the same runs
share problem ids, so the two variants stay pairable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from ..analytics.textstats import DEFAULT_BACKTRACK_TERMS, reflection_markers
from ..model.serialize import (
    RunPaths,
    append_jsonl,
    load_json,
    parse_artifact_name,
    path_from_doc,
    problem_from_doc,
    thought_from_doc,
)
from ..model.types import EventKind, PathKind, TrainingRecord

VARIANT_TO_KIND = {
    "journey": PathKind.JOURNEY.value,
    "shortcut": PathKind.SHORTCUT.value,
    "phase1-correct-solution": PathKind.SHORTCUT.value,
}


@dataclass
class EmitManifest:
    emitted: int = 0
    skipped: list[dict[str, Any]] = field(default_factory=list)

    def skip(self, run_id: str, reason: str, detail: str = "") -> None:
        self.skipped.append({"run_id": run_id, "reason": reason, "detail": detail})


def emit_sft(run_dirs: Iterable[Path], variant: str) -> tuple[list[TrainingRecord], EmitManifest]:
    """Emit one record per thought of the requested variant across runs."""
    if variant not in VARIANT_TO_KIND:
        raise ValueError(f"unknown variant {variant!r}")
    kind = VARIANT_TO_KIND[variant]
    records: list[TrainingRecord] = []
    manifest = EmitManifest()

    for run_dir in sorted(Path(d) for d in run_dirs):
        run_id = run_dir.name
        paths = RunPaths(run_dir)
        if not paths.problem.exists():
            manifest.skip(run_id, "missing problem.json")
            continue
        problem = problem_from_doc(load_json(paths.problem))
        thought_files = [p for p in paths.thought_files() if parse_artifact_name(p.name)[1] == kind]
        if not thought_files:
            manifest.skip(run_id, "missing thought", f"no thought.{kind}.*.json")
            continue
        for thought_file in thought_files:
            thought = thought_from_doc(load_json(thought_file))
            _, _, seed = parse_artifact_name(thought_file.name)
            response = thought.output_text
            if variant == "journey" and _had_excursions(paths, thought.traversal_ref):
                if reflection_markers(response, DEFAULT_BACKTRACK_TERMS).count == 0:
                    manifest.skip(run_id, "journey response lost backtrack markers", thought_file.name)
                    continue
            records.append(
                TrainingRecord(
                    problem_id=problem.id,
                    prompt=problem.statement,
                    response=response,
                    variant=variant,
                    provenance=f"{run_id}:{seed}",
                )
            )
            manifest.emitted += 1
    return records, manifest


def _had_excursions(paths: RunPaths, traversal_ref: str) -> bool:
    traversal_file = paths.root / f"{traversal_ref}.json"
    if not traversal_file.exists():
        return False
    path = path_from_doc(load_json(traversal_file))
    return any(e.kind is EventKind.BACKTRACK for e in path.events)


def write_sft_records(records: Sequence[TrainingRecord], out: Path) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("", encoding="utf-8")
    for record in records:
        append_jsonl(
            out,
            {
                "problem_id": record.problem_id,
                "prompt": record.prompt,
                "response": record.response,
                "variant": record.variant,
                "provenance": record.provenance,
            },
        )
