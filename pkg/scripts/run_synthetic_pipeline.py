#!/usr/bin/env python3
"""End-to-end synthetic pipeline: build trees, derive thoughts, emit datasets.

Writes a runs/ directory, sft.journey.jsonl / sft.shortcut.jsonl / dpo.jsonl,
and prints a per-thought stats table contrasting journey and shortcut texts.

Usage: python3 scripts/run_synthetic_pipeline.py [--problems 20] [--out-dir out/synthetic]
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from journey_forge.treebuilder.builder import build_tree
from journey_forge.dataset.dpo import emit_dpo, write_dpo_pairs
from journey_forge.dataset.sft import emit_sft, write_sft_records
from journey_forge.journey.derive import attach_reflections, extract_shortcuts, mark_correct_paths, traverse_journey
from journey_forge.model.serialize import RunPaths, dump_json, path_to_doc, problem_to_doc, thought_to_doc, tree_to_doc
from journey_forge.model.types import BuildParams, PruneMode, SamplingParams, TraversalConstraints
from journey_forge.providers.answer_check import final_answer
from journey_forge.providers.synthetic import OraclePolicy, OracleReward, PlantedResponseGenerator, generate_problem
from journey_forge.thought.assemble import draft_long_thought


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--problems", type=int, default=20)
    parser.add_argument("--w", type=int, default=3)
    parser.add_argument("--depth", type=int, default=10)
    parser.add_argument("--beam", type=int, default=2)
    parser.add_argument("--trials", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", type=Path, default=Path("out/synthetic"))
    args = parser.parse_args()

    runs_root = args.out_dir / "runs"
    policy, reward = OraclePolicy(), OracleReward()
    problems = [generate_problem(args.seed + i) for i in range(args.problems)]

    started = time.monotonic()
    stats_rows = []
    for i, problem in enumerate(problems):
        params = BuildParams(
            width_w=args.w, max_depth_D=args.depth, beam_K=args.beam,
            prune_mode=PruneMode.BINARY_FILTER, seed=args.seed + i,
        )
        tree = build_tree(problem, policy, reward, final_answer, params)
        paths = RunPaths(runs_root / f"run-{i:04d}")
        dump_json(paths.problem, problem_to_doc(problem))
        dump_json(paths.tree, tree_to_doc(tree))
        dump_json(paths.meta, {"run_id": paths.root.name, "iteration_tag": "iter1", "problem_id": problem.id})

        marked = mark_correct_paths(tree)
        shortcuts = extract_shortcuts(marked)
        if not shortcuts:
            print(f"run-{i:04d}: no correct leaf, skipping derivation")
            continue
        dump_json(paths.traversal("shortcut", 0), path_to_doc(shortcuts[0]))
        shortcut_thought = draft_long_thought(shortcuts[0], marked, seed=0, traversal_ref="traversal.shortcut.0")
        dump_json(paths.thought("shortcut", 0), thought_to_doc(shortcut_thought))

        constraints = TraversalConstraints(max_trials_K=args.trials, seed=args.seed + i)
        journey = attach_reflections(traverse_journey(tree, constraints), marked)
        dump_json(paths.traversal("journey", constraints.seed), path_to_doc(journey))
        journey_thought = draft_long_thought(journey, marked, seed=constraints.seed, traversal_ref=f"traversal.journey.{constraints.seed}")
        dump_json(paths.thought("journey", constraints.seed), thought_to_doc(journey_thought))

        stats_rows.append((problem.id, shortcut_thought.stats, journey_thought.stats))

    run_dirs = sorted(runs_root.glob("run-*"))
    journey_records, _ = emit_sft(run_dirs, "journey")
    shortcut_records, _ = emit_sft(run_dirs, "shortcut")
    write_sft_records(journey_records, args.out_dir / "sft.journey.jsonl")
    write_sft_records(shortcut_records, args.out_dir / "sft.shortcut.jsonl")

    pairs, manifest = emit_dpo(problems, PlantedResponseGenerator(), SamplingParams(), seed=args.seed)
    write_dpo_pairs(pairs, args.out_dir / "dpo.jsonl")

    elapsed = time.monotonic() - started
    print(f"\n{len(run_dirs)} runs in {elapsed:.2f}s -> {runs_root}")
    print(f"sft: {len(journey_records)} journey / {len(shortcut_records)} shortcut records")
    print(f"dpo: {len(pairs)} pairs ({len(manifest.unpaired)} unpaired problems)")
    print(f"\n{'problem':<12} {'sc tokens':>9} {'sc lines':>8} {'jn tokens':>9} {'jn lines':>8} {'jn markers':>10}")
    for problem_id, sc, jn in stats_rows[:15]:
        print(f"{problem_id:<12} {sc.token_count:>9} {sc.line_count:>8} {jn.token_count:>9} {jn.line_count:>8} {jn.reflection_marker_count:>10}")
    if len(stats_rows) > 15:
        print(f"... ({len(stats_rows) - 15} more)")
    print("\ninspect interactively:  journey-forge serve --root", runs_root)


if __name__ == "__main__":
    main()
