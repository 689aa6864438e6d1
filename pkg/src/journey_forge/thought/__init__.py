from .assemble import (
    DEFAULT_MIN_PRESERVATION,
    Granularity,
    Pacing,
    PolishResult,
    PolishStyle,
    STYLE_PRESETS,
    Tone,
    draft_long_thought,
    first_clause,
    normalize_anchor,
    polish_long_thought,
    preservation_score,
)
from .lexicon import DEFAULT_LEXICON, ConnectiveLexicon, RoundRobinSelector

__all__ = [name for name in dir() if not name.startswith("_")]
