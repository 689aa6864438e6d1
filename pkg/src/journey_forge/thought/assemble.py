"""Draft assembly and polish with step-preservation enforcement.

The draft renders one line per traversal event: a connective chosen from
the lexicon, then the step text (advance), the reflection text (reflect),
or a return phrase naming where reasoning resumes (backtrack). Advance
steps appear verbatim, and their first clauses become anchors that any
polished rewrite must retain.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence

from ..analytics.textstats import thought_stats
from ..model.types import EventKind, LongThought, ReasoningTree, TraversalPath
from ..providers.base import ProviderError, Rewriter
from .lexicon import DEFAULT_LEXICON, ConnectiveLexicon, RoundRobinSelector

DEFAULT_MIN_PRESERVATION = 0.9


class Granularity(str, Enum):
    AS_IS = "as-is"
    FINER_STEPS = "finer-steps"


class Pacing(str, Enum):
    NONE = "none"
    GRADUAL_PAUSES = "gradual-pauses"


class Tone(str, Enum):
    NEUTRAL = "neutral"
    STUDENT_EXPLORER = "student-explorer"


@dataclass(frozen=True)
class PolishStyle:
    granularity: Granularity = Granularity.AS_IS
    pacing: Pacing = Pacing.NONE
    tone: Tone = Tone.NEUTRAL


STYLE_PRESETS = {
    "neutral": PolishStyle(),
    "student-explorer": PolishStyle(pacing=Pacing.GRADUAL_PAUSES, tone=Tone.STUDENT_EXPLORER),
    "finer-steps": PolishStyle(granularity=Granularity.FINER_STEPS),
}


def first_clause(text: str) -> str:
    for separator in (":", ";", "."):
        if separator in text:
            return text.split(separator, 1)[0].strip()
    return text.strip()


def normalize_anchor(text: str) -> str:
    return " ".join(text.lower().split())


def draft_long_thought(
    path: TraversalPath,
    tree: ReasoningTree,
    lexicon: ConnectiveLexicon = DEFAULT_LEXICON,
    seed: int = 0,
    traversal_ref: Optional[str] = None,
) -> LongThought:
    """Render a traversal into a deterministic draft thought."""
    selectors = {
        EventKind.ADVANCE: RoundRobinSelector(lexicon.advance, seed),
        EventKind.BACKTRACK: RoundRobinSelector(lexicon.backtrack, seed),
        EventKind.REFLECT: RoundRobinSelector(lexicon.reflect, seed),
    }
    lines: list[str] = []
    anchors: list[tuple[int, str]] = []
    for index, event in enumerate(path.events):
        connective = selectors[event.kind].next()
        if event.kind is EventKind.ADVANCE:
            step = tree.nodes[event.node_id].step_text
            lines.append(f"{connective}, {step}")
            anchors.append((index, normalize_anchor(first_clause(step))))
        elif event.kind is EventKind.BACKTRACK:
            target = tree.nodes[event.node_id]
            target_desc = f"'{first_clause(target.step_text)}'" if target.step_text else "the beginning"
            lines.append(f"{connective}. That line of reasoning failed, so we return to {target_desc}.")
        else:
            lines.append(f"{connective}, {event.text}")
    draft = "\n".join(lines)
    stats = thought_stats(draft, reflection_lexicon=lexicon.marker_terms())
    return LongThought(
        traversal_ref=traversal_ref or f"traversal.{path.kind.value}.{path.seed}",
        draft_text=draft,
        step_anchors=tuple(anchors),
        preservation_score=1.0,
        stats=stats,
        polished_text=None,
    )


def preservation_score(anchors: Sequence[tuple[int, str]], text: str) -> float:
    """Fraction of anchors whose normalized form appears in the text."""
    if not anchors:
        return 1.0
    haystack = normalize_anchor(text)
    found = sum(1 for _, anchor in anchors if anchor in haystack)
    return found / len(anchors)


@dataclass(frozen=True)
class PolishResult:
    thought: LongThought
    accepted: bool
    measured_preservation: float
    warning: Optional[str] = None


def polish_long_thought(
    thought: LongThought,
    rewriter: Rewriter,
    style: PolishStyle,
    min_preservation: float = DEFAULT_MIN_PRESERVATION,
    lexicon: ConnectiveLexicon = DEFAULT_LEXICON,
) -> PolishResult:
    """Rewrite the draft, accepting the result only if anchors survive.

    A rewrite that keeps fewer than ``min_preservation`` of the step anchors
    is rejected: the thought keeps its draft as the output text and the
    failing score is reported. Rewriter failures likewise fall back to the
    draft with a warning instead of losing the thought.
    """
    try:
        polished = rewriter.polish(thought.draft_text, style)
    except ProviderError as exc:
        return PolishResult(thought=thought, accepted=False, measured_preservation=0.0, warning=f"rewriter failed: {exc}")
    score = preservation_score(thought.step_anchors, polished)
    if score < min_preservation:
        return PolishResult(
            thought=thought,
            accepted=False,
            measured_preservation=score,
            warning=f"preservation {score:.3f} below threshold {min_preservation:.3f}; draft retained",
        )
    stats = thought_stats(polished, reflection_lexicon=lexicon.marker_terms())
    accepted = replace(thought, polished_text=polished, preservation_score=score, stats=stats)
    return PolishResult(thought=accepted, accepted=True, measured_preservation=score)
