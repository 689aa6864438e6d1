"""Command-line entry points for the full pipeline.

Typical flow::

    journey-forge gen-problems --count 3 --seed 7 --out-dir problems/
    journey-forge build-tree --problem problems/lin-000007.json \
        --w 3 --depth 10 --beam 2 --prune binary \
        --policy oracle: --reward oracle: --seed 7 --out runs/demo
    journey-forge derive --run runs/demo --kind journey --trials 2 --seed 7
    journey-forge assemble --run runs/demo --traversal traversal.journey.7.json
    journey-forge emit-sft --runs 'runs/*' --variant journey --out sft.jsonl
    journey-forge serve --root runs/ --port 8400
"""

from __future__ import annotations

import glob as globlib
import json
import sys
import time
from pathlib import Path

import click

from .analytics.bench import bench_reward_provider, load_labeled_dataset, report_to_doc
from .analytics.textstats import thought_stats
from .treebuilder.builder import BuilderConfig, TreeBuildAborted, build_tree
from .treebuilder.importer import import_labeled_tree
from .dataset.dpo import emit_dpo, write_dpo_pairs
from .dataset.sft import emit_sft, write_sft_records
from .journey.derive import NoShortcutError, attach_reflections, extract_shortcuts, mark_correct_paths, traverse_journey
from .model.serialize import (
    RunPaths,
    dump_json,
    load_annotations,
    load_json,
    parse_artifact_name,
    path_from_doc,
    path_to_doc,
    problem_from_doc,
    problem_to_doc,
    stats_to_doc,
    thought_to_doc,
    tree_from_doc,
    tree_to_doc,
)
from .model.types import BuildParams, PruneMode, SamplingParams, TraversalConstraints
from .providers.answer_check import final_answer
from .providers.specs import build_generator, build_policy, build_reward, build_rewriter
from .providers.synthetic import generate_problem
from .thought.assemble import STYLE_PRESETS, draft_long_thought, polish_long_thought

PRUNE_CHOICES = {"scalar": PruneMode.SCALAR_TOP_K, "binary": PruneMode.BINARY_FILTER}


@click.group()
def main() -> None:
    """Reasoning-tree synthesis, journey derivation, and dataset emission."""


@main.command("gen-problems")
@click.option("--count", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out-dir", type=click.Path(path_type=Path), required=True)
def gen_problems(count: int, seed: int, out_dir: Path) -> None:
    """Generate seeded synthetic linear-equation problems."""
    out_dir.mkdir(parents=True, exist_ok=True)
    for i in range(count):
        problem = generate_problem(seed + i)
        dump_json(out_dir / f"{problem.id}.json", problem_to_doc(problem))
        click.echo(f"wrote {out_dir / f'{problem.id}.json'}")


@main.command("build-tree")
@click.option("--problem", "problem_file", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--w", type=int, required=True, help="candidates per expansion")
@click.option("--depth", type=int, required=True, help="maximum depth D")
@click.option("--beam", type=int, required=True, help="beam width K")
@click.option("--prune", type=click.Choice(sorted(PRUNE_CHOICES)), default="binary", show_default=True)
@click.option("--policy", "policy_spec", required=True, help="provider spec (oracle:, http:…, replay:…, record:…)")
@click.option("--reward", "reward_spec", required=True, help="provider spec")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True, help="run directory")
@click.option("--iteration-tag", default="", help="tag recorded in meta.json for cross-iteration comparison")
@click.option("--relax-on-zero-survivors", is_flag=True, default=False)
def build_tree_cmd(
    problem_file: Path,
    w: int,
    depth: int,
    beam: int,
    prune: str,
    policy_spec: str,
    reward_spec: str,
    seed: int,
    out_dir: Path,
    iteration_tag: str,
    relax_on_zero_survivors: bool,
) -> None:
    """Build an on-policy reasoning tree and persist the run directory."""
    problem = problem_from_doc(load_json(problem_file))
    params = BuildParams(width_w=w, max_depth_D=depth, beam_K=beam, prune_mode=PRUNE_CHOICES[prune], seed=seed)
    policy, policy_info = build_policy(policy_spec)
    reward, reward_info = build_reward(reward_spec)
    config = BuilderConfig(relax_on_zero_survivors=relax_on_zero_survivors)
    paths = RunPaths(out_dir)
    meta = {
        "run_id": out_dir.name,
        "iteration_tag": iteration_tag,
        "created_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "problem_id": problem.id,
        "params": {"width_w": w, "max_depth_D": depth, "beam_K": beam, "prune_mode": PRUNE_CHOICES[prune].value, "seed": seed},
        "policy": policy_info,
        "reward": reward_info,
    }
    try:
        tree = build_tree(problem, policy, reward, final_answer, params, config)
    except TreeBuildAborted as exc:
        dump_json(paths.problem, problem_to_doc(problem))
        dump_json(paths.tree, tree_to_doc(exc.partial_tree))
        dump_json(paths.meta, {**meta, "aborted": True})
        dump_json(paths.root / "errors.json", exc.manifest)
        click.echo(f"build aborted: {exc}; partial tree persisted under {out_dir}", err=True)
        sys.exit(1)
    dump_json(paths.problem, problem_to_doc(problem))
    dump_json(paths.tree, tree_to_doc(tree))
    dump_json(paths.meta, {**meta, "policy_call_count": tree.policy_call_count})
    click.echo(f"built tree with {len(tree.nodes)} nodes ({tree.policy_call_count} policy batches) -> {paths.tree}")


@main.command("import-tree")
@click.option("--source", type=click.Path(exists=True, path_type=Path), required=True, help="labeled step-tree JSON")
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@click.option("--neutral-value", type=float, default=None, help="reward for neutral ratings (default: none)")
def import_tree_cmd(source: Path, out_dir: Path, neutral_value: float | None) -> None:
    """Import a pre-labeled (off-policy) step tree into a run directory."""
    result = import_labeled_tree(source, neutral_value=neutral_value)
    paths = RunPaths(out_dir)
    dump_json(paths.problem, problem_to_doc(result.tree.problem))
    dump_json(paths.tree, tree_to_doc(result.tree))
    dump_json(
        paths.meta,
        {
            "run_id": out_dir.name,
            "iteration_tag": "",
            "created_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "problem_id": result.tree.problem.id,
            "imported_from": str(source),
            "import_report": {"unratable": result.report.unratable},
        },
    )
    click.echo(f"imported {len(result.tree.nodes)} nodes -> {paths.tree}")
    if result.report.unratable:
        click.echo(f"{len(result.report.unratable)} unratable step ratings (kept without reward)", err=True)


@main.command("derive")
@click.option("--run", "run_dir", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--kind", type=click.Choice(["shortcut", "journey"]), required=True)
@click.option("--trials", type=int, default=2, show_default=True, help="per-node trial budget K")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mid-descent/--no-mid-descent", default=True, show_default=True, help="reflect after each wrong step, not only at backtracks")
def derive_cmd(run_dir: Path, kind: str, trials: int, seed: int, mid_descent: bool) -> None:
    """Derive a traversal from a run's tree (annotations respected)."""
    paths = RunPaths(run_dir)
    tree = tree_from_doc(load_json(paths.tree))
    annotations = load_annotations(paths.annotations)
    if kind == "shortcut":
        marked = mark_correct_paths(tree, annotations)
        shortcuts = extract_shortcuts(marked, annotations)
        if not shortcuts:
            click.echo("no shortcut: the tree has no correct leaf", err=True)
            sys.exit(1)
        out = paths.traversal("shortcut", 0)
        dump_json(out, path_to_doc(shortcuts[0]))
        click.echo(f"wrote {out} ({len(shortcuts)} shortcut(s) available; smallest written)")
        return
    constraints = TraversalConstraints(max_trials_K=trials, seed=seed)
    try:
        journey = traverse_journey(tree, constraints, annotations)
    except NoShortcutError as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    marked = mark_correct_paths(tree, annotations)
    reflected = attach_reflections(journey, marked, annotations, mid_descent=mid_descent)
    out = paths.traversal("journey", seed)
    dump_json(out, path_to_doc(reflected))
    click.echo(f"wrote {out} ({len(reflected.events)} events)")


@main.command("assemble")
@click.option("--run", "run_dir", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--traversal", "traversal_name", required=True, help="traversal file name inside the run directory")
@click.option("--polish", "polish_spec", default="none", show_default=True, help="rewriter spec or 'none'")
@click.option("--style", type=click.Choice(sorted(STYLE_PRESETS)), default="neutral", show_default=True)
@click.option("--min-preservation", type=float, default=0.9, show_default=True)
def assemble_cmd(run_dir: Path, traversal_name: str, polish_spec: str, style: str, min_preservation: float) -> None:
    """Assemble a long thought from a stored traversal, optionally polished."""
    paths = RunPaths(run_dir)
    traversal_file = paths.root / traversal_name
    path = path_from_doc(load_json(traversal_file))
    tree = tree_from_doc(load_json(paths.tree))
    _, kind, seed = parse_artifact_name(traversal_name)
    thought = draft_long_thought(path, tree, seed=seed, traversal_ref=f"traversal.{kind}.{seed}")
    if polish_spec != "none":
        rewriter, _ = build_rewriter(polish_spec)
        result = polish_long_thought(thought, rewriter, STYLE_PRESETS[style], min_preservation=min_preservation)
        thought = result.thought
        if result.warning:
            click.echo(result.warning, err=True)
    out = paths.thought(kind, seed)
    dump_json(out, thought_to_doc(thought))
    click.echo(f"wrote {out} (preservation {thought.preservation_score:.3f})")


@main.command("emit-sft")
@click.option("--runs", "runs_glob", required=True, help="glob of run directories, e.g. 'runs/*'")
@click.option("--variant", type=click.Choice(["shortcut", "journey", "phase1-correct-solution"]), required=True)
@click.option("--out", "out_file", type=click.Path(path_type=Path), required=True)
def emit_sft_cmd(runs_glob: str, variant: str, out_file: Path) -> None:
    """Emit line-delimited SFT records from run directories."""
    run_dirs = [Path(p) for p in sorted(globlib.glob(runs_glob)) if Path(p).is_dir()]
    records, manifest = emit_sft(run_dirs, variant)
    write_sft_records(records, out_file)
    click.echo(f"wrote {len(records)} records -> {out_file}")
    for entry in manifest.skipped:
        click.echo(f"skipped {entry['run_id']}: {entry['reason']}", err=True)


@main.command("emit-dpo")
@click.option("--problems", "problems_file", type=click.Path(exists=True, path_type=Path), required=True, help="JSONL of problem documents")
@click.option("--generator", "generator_spec", required=True)
@click.option("--n", type=int, default=20, show_default=True)
@click.option("--top-p", type=float, default=0.95, show_default=True)
@click.option("--temp", type=float, default=0.7, show_default=True)
@click.option("--pos", type=int, default=5, show_default=True)
@click.option("--neg", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--floor", type=int, default=10, show_default=True)
@click.option("--out", "out_file", type=click.Path(path_type=Path), required=True)
def emit_dpo_cmd(
    problems_file: Path,
    generator_spec: str,
    n: int,
    top_p: float,
    temp: float,
    pos: int,
    neg: int,
    seed: int,
    floor: int,
    out_file: Path,
) -> None:
    """Sample responses per problem and emit preference pairs."""
    problems = []
    with problems_file.open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                problems.append(problem_from_doc(json.loads(line)))
    generator, _ = build_generator(generator_spec)
    params = SamplingParams(top_p=top_p, temperature=temp, n_samples=n)
    pairs, manifest = emit_dpo(problems, generator, params, pos_n=pos, neg_n=neg, seed=seed, floor=floor)
    write_dpo_pairs(pairs, out_file)
    click.echo(f"wrote {len(pairs)} pairs -> {out_file}")
    if manifest.unpaired:
        click.echo(f"unpaired problems: {', '.join(manifest.unpaired)}", err=True)
    if manifest.excluded:
        click.echo(f"excluded problems: {', '.join(e['problem_id'] for e in manifest.excluded)}", err=True)


@main.command("analyze")
@click.option("--input", "input_glob", required=True, help="glob of thought.json files")
@click.option("--report", "report_file", type=click.Path(path_type=Path), required=True)
def analyze_cmd(input_glob: str, report_file: Path) -> None:
    """Compute thought statistics for every matched thought document."""
    entries = []
    for path in sorted(globlib.glob(input_glob)):
        doc = load_json(Path(path))
        text = doc.get("polished_text") or doc.get("draft_text") or ""
        if not text:
            continue
        stats = thought_stats(text)
        entries.append({"file": path, "stats": stats_to_doc(stats)})
    report = {
        "thought_count": len(entries),
        "total_tokens": sum(e["stats"]["token_count"] for e in entries),
        "thoughts": entries,
    }
    dump_json(report_file, report)
    click.echo(f"analyzed {len(entries)} thoughts -> {report_file}")


@main.command("bench-reward")
@click.option("--dataset", "dataset_file", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--provider", "provider_spec", required=True)
@click.option("--threshold", type=float, default=0.5, show_default=True)
@click.option("--granularity", type=click.Choice(["step-level", "first-error-location"]), default="step-level", show_default=True)
@click.option("--report", "report_file", type=click.Path(path_type=Path), required=True)
def bench_reward_cmd(dataset_file: Path, provider_spec: str, threshold: float, granularity: str, report_file: Path) -> None:
    """Benchmark a step reward provider on a labeled dataset."""
    dataset = load_labeled_dataset(dataset_file)
    provider, _ = build_reward(provider_spec)
    report = bench_reward_provider(dataset, provider, threshold=threshold, granularity=granularity)
    dump_json(report_file, report_to_doc(report))
    click.echo(f"{report.provider_id}: precision={report.precision:.3f} recall={report.recall:.3f} f1={report.f1:.3f}")


@main.command("serve")
@click.option("--root", "runs_root", type=click.Path(path_type=Path), default=Path("runs"), show_default=True)
@click.option("--port", type=int, default=8400, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--static", "static_dir", type=click.Path(path_type=Path), default=None, help="UI bundle directory")
def serve_cmd(runs_root: Path, port: int, host: str, static_dir: Path | None) -> None:
    """Serve the workbench HTTP API (and optionally the UI bundle)."""
    import uvicorn

    from .workbench.service import create_app

    app = create_app(runs_root, static_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
