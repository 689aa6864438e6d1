"""Chat-completion adapters for every provider role.

One HttpChatClient turns prompts into completions through a Transport
(live, recording, or replay); the role adapters own their prompt templates
and response grammars. Provider ids are derived from the configured model,
not the transport, so a replayed run serializes identically to the
recorded one.
"""

from __future__ import annotations

import hashlib
import re
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Sequence

from ..model.types import ProblemInstance, ProposalBatch, RewardKind, SamplingParams, StepReward
from .base import ParseError, UnjudgeableError, dedupe_candidates, normalize_candidate
from .transport import Transport

_VERDICT = re.compile(r"^\s*(yes|no)\b[\s:,.!-]*", re.IGNORECASE)
_FLOAT = re.compile(r"\d*\.?\d+")

DEDUPE_RETRY_CAP = 2


def default_template(name: str) -> str:
    return resources.files("journey_forge.providers").joinpath(f"templates/{name}").read_text(encoding="utf-8")


def load_template(path: Optional[Path | str], default_name: str) -> str:
    if path is None:
        return default_template(default_name)
    return Path(path).read_text(encoding="utf-8")


def template_hash(template: str) -> str:
    return hashlib.sha256(template.encode("utf-8")).hexdigest()


def render_template(template: str, **values: str) -> str:
    # Plain substring replacement: prompt bodies routinely contain literal
    # braces (boxed answers), so str.format is off the table.
    rendered = template
    for key, value in values.items():
        rendered = rendered.replace("{" + key + "}", value)
    return rendered


@dataclass
class HttpChatClient:
    transport: Transport
    model: str

    def complete(self, prompt: str, n: int, temperature: float, top_p: float) -> list[str]:
        body: dict[str, Any] = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": temperature,
            "top_p": top_p,
            "n": n,
        }
        response = self.transport(body)
        try:
            choices = response["choices"]
            texts = [choice["message"]["content"] for choice in choices]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed completion payload: {exc}", payload=repr(response)[:2000]) from exc
        if len(texts) < n:
            raise ParseError(f"asked for {n} completions, got {len(texts)}", payload=repr(response)[:2000])
        return [str(t) for t in texts[:n]]


def _render_prefix(prefix: Sequence[str]) -> str:
    return "\n".join(f"{i + 1}. {step}" for i, step in enumerate(prefix)) if prefix else "(no steps yet)"


class HttpPolicy:
    def __init__(self, client: HttpChatClient, template: str, sampling: Optional[SamplingParams] = None):
        self.client = client
        self.template = template
        self.sampling = sampling or SamplingParams(n_samples=1)
        self.provider_id = f"http:{client.model}:policy"

    def propose(self, problem: ProblemInstance, prefix: Sequence[str], w: int, seed: int) -> ProposalBatch:
        prompt = render_template(self.template, problem=problem.statement, prefix=_render_prefix(prefix))
        started = time.monotonic()
        texts = self.client.complete(prompt, n=w, temperature=self.sampling.temperature, top_p=self.sampling.top_p)
        candidates = dedupe_candidates([t.strip() for t in texts if t.strip()])
        retries = 0
        while len(candidates) < w and retries < DEDUPE_RETRY_CAP:
            retries += 1
            more = self.client.complete(prompt, n=w, temperature=self.sampling.temperature, top_p=self.sampling.top_p)
            candidates = dedupe_candidates(candidates + [t.strip() for t in more if t.strip()])
        # Last resort: pad with visibly distinct variants of what we have, so
        # the batch still carries exactly w distinct candidates.
        index = 0
        while candidates and len(candidates) < w:
            variant = f"{candidates[index % len(candidates)]} [alternative {index + 2}]"
            if normalize_candidate(variant) not in {normalize_candidate(c) for c in candidates}:
                candidates.append(variant)
            index += 1
        if not candidates:
            raise ParseError("policy returned no usable candidates", payload=repr(texts)[:2000])
        latency = (time.monotonic() - started) * 1000.0
        return ProposalBatch(prefix=tuple(prefix), candidates=tuple(candidates[:w]), provider_id=self.provider_id, latency_ms=latency)


class HttpReward:
    """Verdict-style (binary) or score-style (scalar) step judge."""

    def __init__(self, client: HttpChatClient, template: str, kind: RewardKind = RewardKind.BINARY):
        self.client = client
        self.template = template
        self.kind = kind
        self.provider_id = f"http:{client.model}:reward"

    def judge(self, problem: ProblemInstance, prefix: Sequence[str], step: str) -> StepReward:
        if not step.strip():
            raise UnjudgeableError("empty step")
        prompt = render_template(self.template, problem=problem.statement, prefix=_render_prefix(prefix), step=step)
        text = self.client.complete(prompt, n=1, temperature=0.0, top_p=1.0)[0].strip()
        if not text:
            raise UnjudgeableError("empty verdict from reward endpoint")
        if self.kind is RewardKind.SCALAR:
            match = _FLOAT.search(text)
            if not match:
                raise UnjudgeableError(f"no score in reward completion: {text[:120]!r}")
            value = float(match.group(0))
            if not 0.0 <= value <= 1.0:
                raise ParseError(f"score {value} outside [0, 1]", payload=text[:2000])
            return StepReward(kind=RewardKind.SCALAR, value=value, provider_id=self.provider_id)
        match = _VERDICT.match(text)
        if not match:
            raise UnjudgeableError(f"verdict must start with YES or NO, got {text[:120]!r}")
        verdict = match.group(1).lower() == "yes"
        rationale = text[match.end() :].strip() or text
        return StepReward(
            kind=RewardKind.BINARY,
            value=1.0 if verdict else 0.0,
            rationale=rationale,
            provider_id=self.provider_id,
        )


class HttpRewriter:
    """Polishes drafts; oversized drafts are rewritten in line-aligned chunks."""

    def __init__(self, client: HttpChatClient, template: str, max_chunk_chars: int = 6000):
        self.client = client
        self.template = template
        self.max_chunk_chars = max_chunk_chars
        self.provider_id = f"http:{client.model}:rewriter"

    def polish(self, draft: str, style: object) -> str:
        chunks = self._chunk(draft)
        polished = [self._polish_chunk(chunk, style) for chunk in chunks]
        return "\n".join(polished)

    def _chunk(self, draft: str) -> list[str]:
        if len(draft) <= self.max_chunk_chars:
            return [draft]
        # Deterministic boundaries: greedy packing of whole lines (one line
        # per traversal event), never splitting inside a line.
        chunks: list[str] = []
        current: list[str] = []
        size = 0
        for line in draft.split("\n"):
            if current and size + len(line) + 1 > self.max_chunk_chars:
                chunks.append("\n".join(current))
                current, size = [], 0
            current.append(line)
            size += len(line) + 1
        if current:
            chunks.append("\n".join(current))
        return chunks

    def _polish_chunk(self, chunk: str, style: object) -> str:
        prompt = render_template(self.template, draft=chunk, style=style_directives(style))
        return self.client.complete(prompt, n=1, temperature=0.3, top_p=0.95)[0]


def style_directives(style: object) -> str:
    """Render a polish style into prompt directives (duck-typed on purpose)."""
    parts: list[str] = []
    granularity = getattr(style, "granularity", None)
    pacing = getattr(style, "pacing", None)
    tone = getattr(style, "tone", None)
    if getattr(granularity, "value", granularity) == "finer-steps":
        parts.append("Break the reasoning into finer, smaller steps.")
    if getattr(pacing, "value", pacing) == "gradual-pauses":
        parts.append("Insert frequent pauses that restate what is known so far.")
    if getattr(tone, "value", tone) == "student-explorer":
        parts.append("Write in a discovery tone, as if solving the problem for the first time.")
    if not parts:
        parts.append("Improve coherence and flow only.")
    parts.append("Preserve every reasoning step, including incorrect steps, reflections, and corrections.")
    return " ".join(parts)


class HttpGenerator:
    def __init__(self, client: HttpChatClient, template: str):
        self.client = client
        self.template = template
        self.provider_id = f"http:{client.model}:generator"

    def generate(self, problem: ProblemInstance, params: SamplingParams, seed: int) -> list[str]:
        prompt = render_template(self.template, problem=problem.statement)
        return self.client.complete(prompt, n=params.n_samples, temperature=params.temperature, top_p=params.top_p)
