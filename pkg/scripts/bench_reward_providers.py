#!/usr/bin/env python3
"""Benchmark step reward providers on a generated labeled-step dataset.

Builds a dataset from synthetic solve traces with known per-step labels,
then scores the oracle judge plus two scripted baselines, printing an
F1 table over the "incorrect" positive class.

Usage: python3 scripts/bench_reward_providers.py [--items 60] [--seed 0]
"""

from __future__ import annotations

import argparse

from journey_forge.analytics.bench import bench_reward_provider
from journey_forge.model.types import LabeledStepDataset, LabeledStepItem, Verdict
from journey_forge.providers.scripted import ScriptedScalarReward, ScriptedVerdictReward
from journey_forge.providers.synthetic import OraclePolicy, OracleReward, generate_problem, is_terminal_step


def build_dataset(items: int, seed: int) -> LabeledStepDataset:
    """Single solve traces with occasional planted wrong steps.

    Each step is labeled against the steps before it, matching the bench
    harness's prefix semantics, so a sound judge can reach F1 = 1.0.
    """
    import random

    policy, reward = OraclePolicy(), OracleReward()
    rng = random.Random(seed)
    rows = []
    for i in range(items):
        problem = generate_problem(seed + i)
        prefix: list[str] = []
        labels: list[Verdict] = []
        for depth in range(6):
            batch = policy.propose(problem, prefix, 3, seed=seed + depth)
            want_correct = rng.random() < 0.7
            target = 1.0 if want_correct else 0.0
            step = next(c for c in batch.candidates if reward.judge(problem, prefix, c).value == target)
            labels.append(Verdict.CORRECT if target == 1.0 else Verdict.INCORRECT)
            prefix.append(step)
            if is_terminal_step(step):
                break
        rows.append(LabeledStepItem(problem=problem.statement, steps=tuple(prefix), labels=tuple(labels)))
    return LabeledStepDataset(items=tuple(rows), source_tag="synthetic-traces")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--items", type=int, default=60)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    dataset = build_dataset(args.items, args.seed)
    total_steps = sum(len(item.steps) for item in dataset.items)
    print(f"dataset: {len(dataset.items)} items, {total_steps} labeled steps\n")

    class OracleOverStatement:
        """Adapts the equation oracle to bench items keyed by statement."""

        provider_id = "oracle:linear-reward"

        def judge(self, problem, prefix, step):
            from journey_forge.model.types import ProblemInstance, ProblemSource

            real = ProblemInstance(id=problem.id, statement=problem.statement, gold_answer="0", source=ProblemSource.SYNTHETIC)
            return OracleReward().judge(real, prefix, step)

    providers = [
        OracleOverStatement(),
        ScriptedVerdictReward(default=True, provider_id="baseline:always-correct"),
        ScriptedScalarReward([0.5, 0.4, 0.6], provider_id="baseline:coin-flip-scalar"),
    ]
    print(f"{'provider':<28} {'tp':>4} {'fp':>4} {'fn':>4} {'tn':>4} {'prec':>6} {'rec':>6} {'f1':>6}")
    for provider in providers:
        report = bench_reward_provider(dataset, provider)
        print(
            f"{report.provider_id:<28} {report.tp:>4} {report.fp:>4} {report.fn:>4} {report.tn:>4} "
            f"{report.precision:>6.3f} {report.recall:>6.3f} {report.f1:>6.3f}"
        )


if __name__ == "__main__":
    main()
