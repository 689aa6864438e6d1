from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from journey_forge.cli import main
from journey_forge.model.serialize import load_json


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    result = runner.invoke(main, [str(a) for a in args], catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


class TestPipelineCli:
    def test_full_oracle_pipeline(self, runner, tmp_path):
        problems = tmp_path / "problems"
        invoke(runner, "gen-problems", "--count", 2, "--seed", 7, "--out-dir", problems)
        problem_files = sorted(problems.glob("*.json"))
        assert len(problem_files) == 2

        run_dir = tmp_path / "runs" / "demo"
        invoke(
            runner,
            "build-tree",
            "--problem", problem_files[0],
            "--w", 3, "--depth", 10, "--beam", 2,
            "--prune", "binary",
            "--policy", "oracle:", "--reward", "oracle:",
            "--seed", 7, "--out", run_dir,
            "--iteration-tag", "iter1",
        )
        assert (run_dir / "tree.json").exists()
        meta = load_json(run_dir / "meta.json")
        assert meta["iteration_tag"] == "iter1"
        assert meta["policy"]["provider_id"] == "oracle:linear-policy"

        invoke(runner, "derive", "--run", run_dir, "--kind", "shortcut")
        invoke(runner, "derive", "--run", run_dir, "--kind", "journey", "--trials", 2, "--seed", 7)
        assert (run_dir / "traversal.shortcut.0.json").exists()
        assert (run_dir / "traversal.journey.7.json").exists()

        invoke(runner, "assemble", "--run", run_dir, "--traversal", "traversal.journey.7.json")
        invoke(runner, "assemble", "--run", run_dir, "--traversal", "traversal.shortcut.0.json", "--polish", "identity:")
        thought = load_json(run_dir / "thought.journey.7.json")
        assert thought["draft_text"]

        sft = tmp_path / "sft.jsonl"
        invoke(runner, "emit-sft", "--runs", str(tmp_path / "runs" / "*"), "--variant", "journey", "--out", sft)
        records = [json.loads(line) for line in sft.read_text().splitlines()]
        assert len(records) == 1 and records[0]["variant"] == "journey"

        report = tmp_path / "stats.json"
        invoke(runner, "analyze", "--input", str(run_dir / "thought.*.json"), "--report", report)
        stats = load_json(report)
        assert stats["thought_count"] == 2

    def test_emit_dpo_cli(self, runner, tmp_path):
        problems_file = tmp_path / "problems.jsonl"
        from journey_forge.model.serialize import canonical_json_line, problem_to_doc
        from journey_forge.providers.synthetic import generate_problem

        problems_file.write_text("\n".join(canonical_json_line(problem_to_doc(generate_problem(s))) for s in (1, 2)) + "\n")
        out = tmp_path / "dpo.jsonl"
        invoke(
            runner,
            "emit-dpo",
            "--problems", problems_file,
            "--generator", "oracle:?correct=7",
            "--n", 20, "--seed", 3,
            "--out", out,
        )
        pairs = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(pairs) == 10  # 5 per problem

    def test_bench_reward_cli(self, runner, tmp_path):
        dataset = tmp_path / "steps.jsonl"
        dataset.write_text(
            json.dumps({"problem": "p", "steps": ["s1", "s2"], "labels": ["correct", "incorrect"]}) + "\n"
        )
        provider_file = tmp_path / "verdicts.json"
        provider_file.write_text(json.dumps({"verdicts": {"s2": False}, "default": True}))
        report = tmp_path / "bench.json"
        result = invoke(
            runner, "bench-reward", "--dataset", dataset, "--provider", f"scripted:{provider_file}", "--report", report
        )
        assert "f1=1.000" in result.output
        assert load_json(report)["f1"] == 1.0

    def test_import_tree_cli(self, runner, tmp_path):
        source = tmp_path / "labeled.json"
        source.write_text(
            json.dumps(
                {
                    "problem": {"id": "imp", "statement": "Solve for x: x = 3", "gold_answer": "3"},
                    "solutions": [{"steps": [{"text": "So x = 3. \\boxed{3}", "rating": 1}]}],
                }
            )
        )
        run_dir = tmp_path / "runs" / "imported"
        invoke(runner, "import-tree", "--source", source, "--out", run_dir)
        tree = load_json(run_dir / "tree.json")
        assert tree["provenance"] == "off-policy-import"

    def test_build_abort_persists_partial_tree(self, runner, tmp_path):
        problems = tmp_path / "problems"
        invoke(runner, "gen-problems", "--count", 1, "--seed", 1, "--out-dir", problems)
        problem_file = next(problems.glob("*.json"))
        run_dir = tmp_path / "runs" / "aborted"
        result = runner.invoke(
            main,
            [
                "build-tree",
                "--problem", str(problem_file),
                "--w", "2", "--depth", "2", "--beam", "1",
                "--policy", "http://127.0.0.1:9?retries=0",  # unroutable port
                "--reward", "oracle:",
                "--out", str(run_dir),
            ],
        )
        assert result.exit_code == 1
        assert (run_dir / "tree.json").exists()
        assert load_json(run_dir / "errors.json")["stage"] == "propose"
        assert load_json(run_dir / "meta.json")["aborted"] is True
