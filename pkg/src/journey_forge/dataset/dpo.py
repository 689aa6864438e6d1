"""Response sampling and preference-pair construction.

Responses are categorized by final-answer correctness; pairs zip two
independent seeded samples (without replacement) of the positive and
negative classes. When either class is short, min(|P|, |N|, n) pairs are
emitted rather than skipping the problem outright.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from ..model.serialize import append_jsonl
from ..model.types import PreferencePair, ProblemInstance, SamplingParams
from ..providers.answer_check import final_answer
from ..providers.base import ProviderError, ResponseGenerator

DEFAULT_RESPONSE_FLOOR = 10

Checker = Callable[[str, str], bool]


@dataclass
class SampleResult:
    responses: list[str]
    warning: Optional[str] = None
    excluded: bool = False


def sample_responses(
    problem: ProblemInstance,
    generator: ResponseGenerator,
    params: SamplingParams,
    seed: int = 0,
    floor: int = DEFAULT_RESPONSE_FLOOR,
) -> SampleResult:
    """Draw n_samples responses; short batches warn, tiny ones are excluded."""
    try:
        responses = list(generator.generate(problem, params, seed))
    except ProviderError as exc:
        return SampleResult(responses=[], warning=f"generator failed: {exc}", excluded=True)
    warning = None
    if len(responses) < params.n_samples:
        warning = f"expected {params.n_samples} responses, got {len(responses)}"
    excluded = len(responses) < floor
    return SampleResult(responses=responses, warning=warning, excluded=excluded)


def build_dpo_pairs(
    responses: Sequence[str],
    gold: str,
    checker: Checker = final_answer,
    problem_id: str = "",
    pos_n: int = 5,
    neg_n: int = 5,
    seed: int = 0,
) -> list[PreferencePair]:
    """Zip seeded samples of correct and incorrect responses into pairs."""
    if not responses:
        return []
    positives = [r for r in responses if checker(r, gold)]
    negatives = [r for r in responses if not checker(r, gold)]
    m = min(len(positives), len(negatives), pos_n, neg_n)
    if m == 0:
        return []
    rng = random.Random(seed)
    chosen = rng.sample(positives, m)
    rejected = rng.sample(negatives, m)
    return [
        PreferencePair(problem_id=problem_id, chosen=c, rejected=r)
        for c, r in zip(chosen, rejected)
    ]


@dataclass
class DpoManifest:
    paired: int = 0
    unpaired: list[str] = field(default_factory=list)
    excluded: list[dict[str, Any]] = field(default_factory=list)
    warnings: list[dict[str, Any]] = field(default_factory=list)


def emit_dpo(
    problems: Sequence[ProblemInstance],
    generator: ResponseGenerator,
    params: SamplingParams,
    checker: Checker = final_answer,
    pos_n: int = 5,
    neg_n: int = 5,
    seed: int = 0,
    floor: int = DEFAULT_RESPONSE_FLOOR,
) -> tuple[list[PreferencePair], DpoManifest]:
    """Sample and pair every problem, collecting the bookkeeping."""
    pairs: list[PreferencePair] = []
    manifest = DpoManifest()
    for problem in problems:
        sample = sample_responses(problem, generator, params, seed=seed, floor=floor)
        if sample.warning:
            manifest.warnings.append({"problem_id": problem.id, "warning": sample.warning})
        if sample.excluded:
            manifest.excluded.append({"problem_id": problem.id, "responses": len(sample.responses)})
            continue
        problem_pairs = build_dpo_pairs(
            sample.responses,
            problem.gold_answer,
            checker=checker,
            problem_id=problem.id,
            pos_n=pos_n,
            neg_n=neg_n,
            seed=seed,
        )
        if not problem_pairs:
            manifest.unpaired.append(problem.id)
            continue
        pairs.extend(problem_pairs)
        manifest.paired += len(problem_pairs)
    return pairs, manifest


def write_dpo_pairs(pairs: Sequence[PreferencePair], out: Path) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("", encoding="utf-8")
    for pair in pairs:
        append_jsonl(out, {"problem_id": pair.problem_id, "chosen": pair.chosen, "rejected": pair.rejected})
