"""Provider protocols and error taxonomy.

Four pluggable roles: the policy proposes steps, the reward judges them, the
checker grades final answers, and the rewriter polishes drafts. Each role
has a deterministic synthetic implementation, an HTTP-endpoint one, and a
record/replay one; tests may also use scripted fixtures.
"""

from __future__ import annotations

from typing import Optional, Protocol, Sequence, runtime_checkable

from ..model.types import ProblemInstance, ProposalBatch, SamplingParams, StepReward


class ProviderError(Exception):
    """Base class for everything a provider can raise."""


class TransportError(ProviderError):
    """Endpoint unreachable or persistently failing; retriable upstream."""


class ParseError(ProviderError):
    """Completion arrived but could not be interpreted; carries the payload."""

    def __init__(self, message: str, payload: Optional[str] = None):
        super().__init__(message)
        self.payload = payload


class UnjudgeableError(ProviderError):
    """The reward provider refused or returned an empty verdict.

    Deliberately distinct from an "incorrect" verdict: silently mapping
    refusals to 0 would corrupt pruning.
    """


class CassetteMissError(ProviderError):
    """Replay was asked for a request the cassette never saw."""


@runtime_checkable
class PolicyProvider(Protocol):
    provider_id: str

    def propose(self, problem: ProblemInstance, prefix: Sequence[str], w: int, seed: int) -> ProposalBatch: ...


@runtime_checkable
class RewardProvider(Protocol):
    provider_id: str

    def judge(self, problem: ProblemInstance, prefix: Sequence[str], step: str) -> StepReward: ...


@runtime_checkable
class Rewriter(Protocol):
    provider_id: str

    def polish(self, draft: str, style: "object") -> str: ...


@runtime_checkable
class ResponseGenerator(Protocol):
    provider_id: str

    def generate(self, problem: ProblemInstance, params: SamplingParams, seed: int) -> list[str]: ...


def normalize_candidate(text: str) -> str:
    """Whitespace-normalized form used for de-duplication."""
    return " ".join(text.split())


def dedupe_candidates(candidates: Sequence[str]) -> list[str]:
    """Drop later duplicates (after whitespace normalization), keeping order."""
    seen: set[str] = set()
    kept: list[str] = []
    for candidate in candidates:
        key = normalize_candidate(candidate)
        if key not in seen:
            seen.add(key)
            kept.append(candidate)
    return kept
