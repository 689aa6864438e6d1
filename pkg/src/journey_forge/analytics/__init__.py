from .bench import GRANULARITIES, bench_reward_provider, load_labeled_dataset, report_to_doc
from .filters import PREDICATE_NAMES, Predicate, ThoughtCase, filter_thoughts, parse_predicates
from .textstats import (
    DEFAULT_BACKTRACK_TERMS,
    DEFAULT_REFLECT_TERMS,
    DEFAULT_REFLECTION_LEXICON,
    DEFAULT_TOKENIZER_SCHEME,
    MarkerScan,
    TOKENIZER_SCHEMES,
    keyword_ngrams,
    reflection_markers,
    thought_stats,
)

__all__ = [name for name in dir() if not name.startswith("_")]
