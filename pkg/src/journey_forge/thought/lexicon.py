"""Connective templates that stitch traversal events into prose."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ConnectiveLexicon:
    """Per-event-kind connective lists, consumed seeded-round-robin.

    The backtrack list must contain "Wait" and the reflect list
    "Alternatively": those two terms are the load-bearing markers that
    downstream keyword analysis looks for.
    """

    advance: tuple[str, ...]
    backtrack: tuple[str, ...]
    reflect: tuple[str, ...]

    def __post_init__(self) -> None:
        for name in ("advance", "backtrack", "reflect"):
            if not getattr(self, name):
                raise ValueError(f"{name} connective list must be non-empty")
        if "Wait" not in self.backtrack:
            raise ValueError('backtrack list must contain "Wait"')
        if "Alternatively" not in self.reflect:
            raise ValueError('reflect list must contain "Alternatively"')

    def marker_terms(self) -> tuple[str, ...]:
        return self.backtrack + self.reflect


DEFAULT_LEXICON = ConnectiveLexicon(
    advance=("So", "Next", "Now", "Therefore", "Then"),
    backtrack=("Wait", "Wait a second", "Let's go back", "Hold on"),
    reflect=("Alternatively", "Let's pause and consider", "Hmm", "On reflection"),
)


class RoundRobinSelector:
    """Cycles through a connective list, starting at an index set by the seed."""

    def __init__(self, choices: tuple[str, ...], seed: int):
        self.choices = choices
        self._index = seed % len(choices)

    def next(self) -> str:
        choice = self.choices[self._index % len(self.choices)]
        self._index += 1
        return choice
