"""Scripted providers: fixed behaviors for tests, benchmarks, and demos."""

from __future__ import annotations

from typing import Callable, Mapping, Optional, Sequence

from ..model.types import ProblemInstance, ProposalBatch, RewardKind, SamplingParams, StepReward
from .base import UnjudgeableError


class ScriptedScalarReward:
    """Emits a scripted scalar score per sibling position, cycling as needed."""

    def __init__(self, scores: Sequence[float], provider_id: str = "scripted:scalar"):
        if not scores:
            raise ValueError("scores must be non-empty")
        self.scores = tuple(float(s) for s in scores)
        self.provider_id = provider_id
        self._calls = 0

    def judge(self, problem: ProblemInstance, prefix: Sequence[str], step: str) -> StepReward:
        score = self.scores[self._calls % len(self.scores)]
        self._calls += 1
        return StepReward(kind=RewardKind.SCALAR, value=score, provider_id=self.provider_id)


class ScriptedVerdictReward:
    """Binary judge driven by a step-text table or a callable.

    Steps absent from the table raise UnjudgeableError when no default is
    given, mirroring how refusals must surface as errors.
    """

    def __init__(
        self,
        verdicts: Optional[Mapping[str, bool]] = None,
        fn: Optional[Callable[[str, Sequence[str], str], bool]] = None,
        default: Optional[bool] = None,
        provider_id: str = "scripted:verdict",
    ):
        self.verdicts = dict(verdicts or {})
        self.fn = fn
        self.default = default
        self.provider_id = provider_id

    def judge(self, problem: ProblemInstance, prefix: Sequence[str], step: str) -> StepReward:
        if self.fn is not None:
            verdict = self.fn(problem.id, prefix, step)
        elif step in self.verdicts:
            verdict = self.verdicts[step]
        elif self.default is not None:
            verdict = self.default
        else:
            raise UnjudgeableError(f"no scripted verdict for step {step!r}")
        return StepReward(
            kind=RewardKind.BINARY,
            value=1.0 if verdict else 0.0,
            rationale="scripted verdict",
            provider_id=self.provider_id,
        )


class ScriptedPolicy:
    """Returns pre-baked candidate lists keyed by prefix length."""

    def __init__(self, candidates_by_depth: Sequence[Sequence[str]], provider_id: str = "scripted:policy"):
        self.candidates_by_depth = [list(c) for c in candidates_by_depth]
        self.provider_id = provider_id

    def propose(self, problem: ProblemInstance, prefix: Sequence[str], w: int, seed: int) -> ProposalBatch:
        depth = len(prefix)
        pool = self.candidates_by_depth[min(depth, len(self.candidates_by_depth) - 1)]
        candidates = [f"{pool[i % len(pool)]}" if i < len(pool) else f"{pool[i % len(pool)]} (variant {i})" for i in range(w)]
        return ProposalBatch(prefix=tuple(prefix), candidates=tuple(candidates), provider_id=self.provider_id)


class IdentityRewriter:
    provider_id = "identity:rewriter"

    def polish(self, draft: str, style: object) -> str:
        return draft


class ScriptedRewriter:
    """Applies a supplied text transformation; used to exercise preservation checks."""

    def __init__(self, fn: Callable[[str], str], provider_id: str = "scripted:rewriter"):
        self.fn = fn
        self.provider_id = provider_id

    def polish(self, draft: str, style: object) -> str:
        return self.fn(draft)


class ScriptedGenerator:
    """Returns a fixed response list, truncated or cycled to n_samples."""

    def __init__(self, responses: Sequence[str], provider_id: str = "scripted:generator", allow_short: bool = False):
        self.responses = list(responses)
        self.provider_id = provider_id
        self.allow_short = allow_short

    def generate(self, problem: ProblemInstance, params: SamplingParams, seed: int) -> list[str]:
        if self.allow_short:
            return self.responses[: params.n_samples]
        return [self.responses[i % len(self.responses)] for i in range(params.n_samples)]
