"""Step-level reward-provider benchmark with F1 over the "incorrect" class."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..model.types import BenchReport, LabeledStepDataset, LabeledStepItem, ProblemInstance, ProblemSource, RewardKind, Verdict
from ..providers.base import RewardProvider, UnjudgeableError

GRANULARITIES = ("step-level", "first-error-location")


def load_labeled_dataset(path: Path | str, source_tag: str = "") -> LabeledStepDataset:
    """Read a JSONL file of {problem, steps: [text], labels: [correct|incorrect]}."""
    path = Path(path)
    items = []
    with path.open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            doc = json.loads(line)
            items.append(LabeledStepItem(problem=doc["problem"], steps=tuple(doc["steps"]), labels=tuple(doc["labels"])))
    return LabeledStepDataset(items=tuple(items), source_tag=source_tag or path.stem)


def _metrics(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def bench_reward_provider(
    dataset: LabeledStepDataset,
    provider: RewardProvider,
    threshold: float = 0.5,
    granularity: str = "step-level",
) -> BenchReport:
    """Judge every step independently and score error detection.

    Each step is judged with its preceding steps as the prefix. Binary
    verdicts map directly to predictions; scalar scores predict "incorrect"
    below the threshold. Steps the provider cannot judge are excluded from
    the confusion counts and tallied separately.
    """
    if granularity not in GRANULARITIES:
        raise ValueError(f"granularity must be one of {GRANULARITIES}")
    tp = fp = fn = tn = unjudgeable = 0

    if granularity == "step-level":
        for item_idx, item in enumerate(dataset.items):
            problem = _problem_for(item, dataset.source_tag, item_idx)
            for step_idx, step in enumerate(item.steps):
                predicted = _predict_incorrect(provider, problem, item.steps[:step_idx], step, threshold)
                if predicted is None:
                    unjudgeable += 1
                    continue
                actual = item.labels[step_idx] is Verdict.INCORRECT
                if predicted and actual:
                    tp += 1
                elif predicted and not actual:
                    fp += 1
                elif not predicted and actual:
                    fn += 1
                else:
                    tn += 1
    else:
        # First-error localization: one prediction per item, correct only
        # when it names the item's first gold-incorrect step exactly.
        for item_idx, item in enumerate(dataset.items):
            problem = _problem_for(item, dataset.source_tag, item_idx)
            gold_first = next((i for i, label in enumerate(item.labels) if label is Verdict.INCORRECT), None)
            predicted_first = None
            for step_idx, step in enumerate(item.steps):
                predicted = _predict_incorrect(provider, problem, item.steps[:step_idx], step, threshold)
                if predicted is None:
                    unjudgeable += 1
                    continue
                if predicted:
                    predicted_first = step_idx
                    break
            if gold_first is None and predicted_first is None:
                tn += 1
            elif gold_first is None:
                fp += 1
            elif predicted_first is None:
                fn += 1
            elif predicted_first == gold_first:
                tp += 1
            else:
                fp += 1
                fn += 1

    precision, recall, f1 = _metrics(tp, fp, fn)
    return BenchReport(
        provider_id=getattr(provider, "provider_id", "unknown"),
        tp=tp,
        fp=fp,
        fn=fn,
        tn=tn,
        precision=precision,
        recall=recall,
        f1=f1,
        unjudgeable=unjudgeable,
        granularity=granularity,
    )


def _problem_for(item: LabeledStepItem, source_tag: str, index: int) -> ProblemInstance:
    return ProblemInstance(
        id=f"{source_tag or 'bench'}-{index:05d}",
        statement=item.problem,
        gold_answer="n/a",
        source=ProblemSource.IMPORTED,
    )


def _predict_incorrect(provider, problem, prefix, step, threshold) -> bool | None:
    try:
        reward = provider.judge(problem, prefix, step)
    except UnjudgeableError:
        return None
    if reward.kind is RewardKind.BINARY:
        return reward.value == 0.0
    return reward.value < threshold


def report_to_doc(report: BenchReport) -> dict[str, Any]:
    return {
        "provider_id": report.provider_id,
        "tp": report.tp,
        "fp": report.fp,
        "fn": report.fn,
        "tn": report.tn,
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "unjudgeable": report.unjudgeable,
        "positive_class": report.positive_class,
        "granularity": report.granularity,
    }
