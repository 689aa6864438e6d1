"""Conditional filtering predicates for thought collections.

The predicate vocabulary matches the workbench's query strings:
``answer-correct``, ``answer-incorrect``, ``contains-keyword:<k>``,
``iteration-tag:<t>``, ``has-backtrack``. A filter is the conjunction of
its predicates and preserves input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .textstats import DEFAULT_BACKTRACK_TERMS, reflection_markers

PREDICATE_NAMES = ("answer-correct", "answer-incorrect", "contains-keyword", "iteration-tag", "has-backtrack")


@dataclass(frozen=True)
class ThoughtCase:
    """A filterable thought document with its run-level metadata."""

    ref: str
    text: str
    answer_correct: Optional[bool] = None
    iteration_tag: Optional[str] = None
    has_backtrack: Optional[bool] = None

    def backtrack_present(self) -> bool:
        if self.has_backtrack is not None:
            return self.has_backtrack
        return reflection_markers(self.text, DEFAULT_BACKTRACK_TERMS).count > 0


@dataclass(frozen=True)
class Predicate:
    name: str
    arg: Optional[str] = None

    def __post_init__(self) -> None:
        if self.name not in PREDICATE_NAMES:
            raise ValueError(f"unknown predicate {self.name!r}")
        if self.name in ("contains-keyword", "iteration-tag") and not self.arg:
            raise ValueError(f"predicate {self.name} requires an argument")

    def matches(self, case: ThoughtCase) -> bool:
        if self.name == "answer-correct":
            return case.answer_correct is True
        if self.name == "answer-incorrect":
            return case.answer_correct is False
        if self.name == "contains-keyword":
            return reflection_markers(case.text, (self.arg,)).count > 0
        if self.name == "iteration-tag":
            return case.iteration_tag == self.arg
        return case.backtrack_present()


def parse_predicates(spec: str) -> list[Predicate]:
    """Parse ``"answer-correct,contains-keyword:wait"`` into predicates."""
    predicates: list[Predicate] = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, _, arg = chunk.partition(":")
        predicates.append(Predicate(name=name, arg=arg or None))
    return predicates


def filter_thoughts(cases: Iterable[ThoughtCase], predicates: Sequence[Predicate]) -> list[ThoughtCase]:
    """Cases satisfying every predicate, in stable input order."""
    return [case for case in cases if all(p.matches(case) for p in predicates)]
