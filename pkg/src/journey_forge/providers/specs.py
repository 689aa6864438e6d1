"""Provider spec strings: ``oracle:``, ``http:…``, ``replay:…``, ``record:…``.

Specs carry their configuration as query parameters, e.g.::

    http://localhost:8731/v1/chat?model=grader-1&token_env=MY_TOKEN&rps=4
    replay:runs/r1/cassette.jsonl?model=grader-1
    record:runs/r1/cassette.jsonl@http://localhost:8731/v1/chat?model=grader-1
    oracle:
    scripted:fixtures/verdicts.json

The parsed configuration (including prompt template hashes) is returned
alongside the provider so runs can record exactly what produced them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional
from urllib.parse import parse_qs

from ..model.types import RewardKind
from .base import ParseError
from .http import HttpChatClient, HttpGenerator, HttpPolicy, HttpReward, HttpRewriter, load_template, template_hash
from .scripted import IdentityRewriter, ScriptedScalarReward, ScriptedVerdictReward
from .synthetic import OraclePolicy, OracleReward, PlantedResponseGenerator
from .transport import LiveTransport, RecordingTransport, ReplayTransport, Transport


@dataclass
class ParsedSpec:
    scheme: str
    target: str
    options: dict[str, str] = field(default_factory=dict)


def parse_spec(spec: str) -> ParsedSpec:
    base, _, query = spec.partition("?")
    options = {k: v[-1] for k, v in parse_qs(query).items()}
    if base.startswith(("http://", "https://")):
        return ParsedSpec(scheme="http", target=base, options=options)
    scheme, sep, target = base.partition(":")
    if not sep:
        raise ParseError(f"provider spec needs a scheme: {spec!r}")
    return ParsedSpec(scheme=scheme, target=target, options=options)


def _client_for(parsed: ParsedSpec) -> HttpChatClient:
    model = parsed.options.get("model", "default")
    transport: Transport
    if parsed.scheme == "http":
        transport = LiveTransport(
            url=parsed.target,
            token_env=parsed.options.get("token_env", "JOURNEY_FORGE_API_TOKEN"),
            max_retries=int(parsed.options.get("retries", 3)),
            requests_per_second=float(parsed.options["rps"]) if "rps" in parsed.options else None,
        )
    elif parsed.scheme == "replay":
        transport = ReplayTransport(parsed.target)
    elif parsed.scheme == "record":
        cassette, _, url = parsed.target.partition("@")
        if not url:
            raise ParseError(f"record spec needs '<cassette>@<url>': {parsed.target!r}")
        live = LiveTransport(
            url=url,
            token_env=parsed.options.get("token_env", "JOURNEY_FORGE_API_TOKEN"),
            max_retries=int(parsed.options.get("retries", 3)),
            requests_per_second=float(parsed.options["rps"]) if "rps" in parsed.options else None,
        )
        transport = RecordingTransport(live, cassette)
    else:
        raise ParseError(f"unsupported transport scheme {parsed.scheme!r}")
    return HttpChatClient(transport=transport, model=model)


def _template(parsed: ParsedSpec, default_name: str) -> tuple[str, str]:
    template = load_template(parsed.options.get("template"), default_name)
    return template, template_hash(template)


def build_policy(spec: str) -> tuple[Any, dict[str, Any]]:
    parsed = parse_spec(spec)
    if parsed.scheme == "oracle":
        provider = OraclePolicy()
        return provider, {"spec": spec, "provider_id": provider.provider_id}
    template, digest = _template(parsed, "propose.txt")
    provider = HttpPolicy(_client_for(parsed), template)
    return provider, {"spec": spec, "provider_id": provider.provider_id, "template_hash": digest}


def build_reward(spec: str) -> tuple[Any, dict[str, Any]]:
    parsed = parse_spec(spec)
    if parsed.scheme == "oracle":
        provider = OracleReward()
        return provider, {"spec": spec, "provider_id": provider.provider_id}
    if parsed.scheme == "scripted":
        provider = _scripted_reward(Path(parsed.target))
        return provider, {"spec": spec, "provider_id": provider.provider_id}
    template, digest = _template(parsed, "judge.txt")
    kind = RewardKind(parsed.options.get("kind", "binary"))
    provider = HttpReward(_client_for(parsed), template, kind=kind)
    return provider, {"spec": spec, "provider_id": provider.provider_id, "template_hash": digest}


def build_rewriter(spec: str) -> tuple[Any, dict[str, Any]]:
    parsed = parse_spec(spec)
    if parsed.scheme in ("identity", "none", "oracle"):
        provider = IdentityRewriter()
        return provider, {"spec": spec, "provider_id": provider.provider_id}
    template, digest = _template(parsed, "polish.txt")
    provider = HttpRewriter(_client_for(parsed), template, max_chunk_chars=int(parsed.options.get("chunk", 6000)))
    return provider, {"spec": spec, "provider_id": provider.provider_id, "template_hash": digest}


def build_generator(spec: str) -> tuple[Any, dict[str, Any]]:
    parsed = parse_spec(spec)
    if parsed.scheme == "oracle":
        correct = parsed.options.get("correct")
        provider = PlantedResponseGenerator(correct_count=int(correct) if correct is not None else None)
        return provider, {"spec": spec, "provider_id": provider.provider_id}
    template, digest = _template(parsed, "solve.txt")
    provider = HttpGenerator(_client_for(parsed), template)
    return provider, {"spec": spec, "provider_id": provider.provider_id, "template_hash": digest}


def _scripted_reward(path: Path) -> Any:
    doc = json.loads(path.read_text(encoding="utf-8"))
    if "scores" in doc:
        return ScriptedScalarReward(doc["scores"], provider_id=f"scripted:{path.name}")
    return ScriptedVerdictReward(
        verdicts=doc.get("verdicts", {}),
        default=doc.get("default"),
        provider_id=f"scripted:{path.name}",
    )
