"""Domain types shared by every stage of the pipeline.

All types are immutable values: construction validates the invariants and
mutation happens only by building new instances (``dataclasses.replace`` or
the ``with_*`` helpers). This makes them safe to share across threads and
keeps re-derivation reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping, Optional

MAX_SEED = 2**64 - 1


class ProblemSource(str, Enum):
    MATH_TRAIN = "math-train"
    SYNTHETIC = "synthetic"
    IMPORTED = "imported"


class PruneMode(str, Enum):
    SCALAR_TOP_K = "scalar-top-k"
    BINARY_FILTER = "binary-filter"


class RewardKind(str, Enum):
    SCALAR = "scalar"
    BINARY = "binary"


class LeafStatus(str, Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    OPEN = "open"


class Provenance(str, Enum):
    ON_POLICY = "on-policy"
    OFF_POLICY_IMPORT = "off-policy-import"


class EventKind(str, Enum):
    ADVANCE = "advance"
    BACKTRACK = "backtrack"
    REFLECT = "reflect"


class PathKind(str, Enum):
    SHORTCUT = "shortcut"
    JOURNEY = "journey"


class Verdict(str, Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def _check_seed(seed: int) -> None:
    _require(isinstance(seed, int) and 0 <= seed <= MAX_SEED, f"seed must be a 64-bit unsigned integer, got {seed!r}")


@dataclass(frozen=True)
class ProblemInstance:
    """A question, its normalized gold final answer, and provenance."""

    id: str
    statement: str
    gold_answer: str
    source: ProblemSource
    difficulty_tag: Optional[str] = None

    def __post_init__(self) -> None:
        _require(bool(self.id), "problem id must be non-empty")
        _require(bool(self.gold_answer), "gold_answer must be non-empty")


@dataclass(frozen=True)
class BuildParams:
    """Knobs of the on-policy tree builder.

    ``width_w`` candidates are proposed per expansion, the frontier keeps at
    most ``beam_K`` survivors per iteration, and expansion stops at depth
    ``max_depth_D``.
    """

    width_w: int
    max_depth_D: int
    beam_K: int
    prune_mode: PruneMode
    seed: int

    def __post_init__(self) -> None:
        _require(self.width_w >= 1, "width_w must be >= 1")
        _require(self.max_depth_D >= 1, "max_depth_D must be >= 1")
        _require(self.beam_K >= 1, "beam_K must be >= 1")
        _check_seed(self.seed)


@dataclass(frozen=True)
class StepReward:
    """Judgement of a single reasoning step.

    Scalar rewards carry a correctness probability in [0, 1]; binary rewards
    carry a hard verdict and must explain it (the rationale feeds the
    reflection text of journey traversals).
    """

    kind: RewardKind
    value: float
    provider_id: str
    rationale: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind is RewardKind.SCALAR:
            _require(0.0 <= self.value <= 1.0, f"scalar reward must lie in [0, 1], got {self.value}")
        else:
            _require(self.value in (0.0, 1.0), f"binary reward must be 0 or 1, got {self.value}")
            _require(bool(self.rationale), "binary rewards require a rationale")


@dataclass(frozen=True)
class TreeNode:
    node_id: str
    parent_id: Optional[str]
    step_text: str
    depth: int
    terminal: bool
    leaf_status: LeafStatus
    reward: Optional[StepReward] = None
    on_correct_path: bool = False
    pruned: bool = False
    annotation_overrides: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        _require(bool(self.node_id), "node_id must be non-empty")
        _require(self.depth >= 0, "depth must be non-negative")
        if self.parent_id is None:
            _require(self.depth == 0, "root node must have depth 0")
            _require(self.step_text == "", "root node carries no step text")
        if self.terminal:
            _require(self.leaf_status is not LeafStatus.OPEN, f"terminal node {self.node_id} cannot be open")
        if self.leaf_status is LeafStatus.CORRECT:
            _require(self.terminal, f"correct node {self.node_id} must be terminal")


@dataclass(frozen=True)
class ReasoningTree:
    """Rooted tree of reasoning steps over one problem.

    Structural invariants (single root, acyclicity, depth consistency) are
    enforced by :func:`journey_forge.model.ops.validate_tree`; construction
    only checks the locally checkable ones.
    """

    problem: ProblemInstance
    params: BuildParams
    root_id: str
    nodes: Mapping[str, TreeNode]
    policy_call_count: int
    provenance: Provenance

    def __post_init__(self) -> None:
        _require(self.policy_call_count >= 0, "policy_call_count must be non-negative")
        _require(self.root_id in self.nodes, "root_id must name a node")
        object.__setattr__(self, "nodes", dict(self.nodes))

    def node(self, node_id: str) -> TreeNode:
        return self.nodes[node_id]

    def with_nodes(self, updated: Mapping[str, TreeNode]) -> "ReasoningTree":
        merged = dict(self.nodes)
        merged.update(updated)
        return replace(self, nodes=merged)


@dataclass(frozen=True)
class TraversalEvent:
    """One move of a tree traversal.

    ``node_id`` is the node entered for advance events and the node returned
    to for backtrack events; reflect events reference the node they comment
    on and carry the reflection text.
    """

    kind: EventKind
    node_id: str
    text: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind is EventKind.REFLECT:
            _require(bool(self.text), "reflect events carry non-empty text")


@dataclass(frozen=True)
class TraversalPath:
    tree_ref: str
    kind: PathKind
    events: tuple[TraversalEvent, ...]
    trial_budget_K: int
    seed: int

    def __post_init__(self) -> None:
        _require(self.trial_budget_K >= 1, "trial_budget_K must be >= 1")
        _check_seed(self.seed)
        object.__setattr__(self, "events", tuple(self.events))
        if self.kind is PathKind.SHORTCUT:
            _require(
                all(e.kind is EventKind.ADVANCE for e in self.events),
                "shortcut paths contain only advance events",
            )

    def advances(self) -> tuple[TraversalEvent, ...]:
        return tuple(e for e in self.events if e.kind is EventKind.ADVANCE)


@dataclass(frozen=True)
class ThoughtStats:
    token_count: int
    line_count: int
    avg_words_per_line: float
    keyword_counts: Mapping[str, int]
    reflection_marker_count: int
    tokenizer_scheme: str

    def __post_init__(self) -> None:
        _require(self.token_count >= 0, "token_count must be >= 0")
        _require(self.line_count >= 0, "line_count must be >= 0")
        _require(self.reflection_marker_count >= 0, "reflection_marker_count must be >= 0")
        _require(all(c >= 0 for c in self.keyword_counts.values()), "keyword counts must be >= 0")
        object.__setattr__(self, "keyword_counts", dict(self.keyword_counts))


@dataclass(frozen=True)
class LongThought:
    """Natural-language rendering of a traversal.

    ``step_anchors`` pins the normalized first clause of every advance step;
    ``preservation_score`` is the fraction of those anchors still present in
    ``polished_text`` (1.0 while no polished text exists, since the draft
    contains every step verbatim by construction).
    """

    traversal_ref: str
    draft_text: str
    step_anchors: tuple[tuple[int, str], ...]
    preservation_score: float
    stats: ThoughtStats
    polished_text: Optional[str] = None

    def __post_init__(self) -> None:
        _require(bool(self.draft_text), "draft_text must be non-empty")
        _require(0.0 <= self.preservation_score <= 1.0, "preservation_score must lie in [0, 1]")
        object.__setattr__(
            self, "step_anchors", tuple((int(i), str(a)) for i, a in self.step_anchors)
        )

    @property
    def output_text(self) -> str:
        return self.polished_text if self.polished_text is not None else self.draft_text


@dataclass(frozen=True)
class AnnotationRecord:
    """Append-only human verdict on a single node.

    Records are never mutated; later records for the same node shadow earlier
    ones, so replaying the log always reproduces the same effective rewards.
    """

    id: str
    node_id: str
    verdict: Verdict
    comment: str
    author: str
    timestamp: str

    def __post_init__(self) -> None:
        _require(bool(self.id), "annotation id must be non-empty")
        _require(bool(self.node_id), "annotation node_id must be non-empty")
        _require(bool(self.timestamp), "annotation timestamp must be non-empty")


@dataclass(frozen=True)
class SamplingParams:
    """Nucleus-sampling configuration for response generation."""

    top_p: float = 0.95
    temperature: float = 0.7
    n_samples: int = 20

    def __post_init__(self) -> None:
        _require(0.0 < self.top_p <= 1.0, "top_p must lie in (0, 1]")
        _require(self.temperature >= 0.0, "temperature must be non-negative")
        _require(self.n_samples >= 1, "n_samples must be >= 1")


class ExcursionChildPolicy(str, Enum):
    SEEDED_RANDOM = "seeded-random"
    LOWEST_REWARD_FIRST = "lowest-reward-first"


@dataclass(frozen=True)
class TraversalConstraints:
    """Limits applied to the journey traversal.

    ``max_trials_K`` caps total descents through each correct-path node; at
    most ``max_trials_K - 1`` of those are excursions into wrong branches.
    """

    max_trials_K: int
    seed: int
    excursion_child_policy: ExcursionChildPolicy = ExcursionChildPolicy.SEEDED_RANDOM

    def __post_init__(self) -> None:
        _require(self.max_trials_K >= 1, "max_trials_K must be >= 1")
        _check_seed(self.seed)


@dataclass(frozen=True)
class ProposalBatch:
    """One expansion's worth of candidate steps.

    Candidates are de-duplicated after whitespace normalization and their
    count equals the requested width.
    """

    prefix: tuple[str, ...]
    candidates: tuple[str, ...]
    provider_id: str
    latency_ms: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "candidates", tuple(self.candidates))
        normalized = [" ".join(c.split()) for c in self.candidates]
        _require(len(set(normalized)) == len(normalized), "candidates must be distinct after whitespace normalization")


@dataclass(frozen=True)
class FrontierState:
    """Snapshot of the builder's frontier after one iteration."""

    iteration: int
    live_nodes: tuple[str, ...]
    generated_this_run: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "live_nodes", tuple(self.live_nodes))


@dataclass(frozen=True)
class RunSummary:
    """Facts about one run directory, derived purely from its contents."""

    run_id: str
    problem_id: str
    iteration_tag: str
    has_correct_leaf: bool
    thought_variants: tuple[str, ...]
    node_count: int
    annotation_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "thought_variants", tuple(self.thought_variants))


@dataclass(frozen=True)
class TrainingRecord:
    problem_id: str
    prompt: str
    response: str
    variant: str
    provenance: str

    def __post_init__(self) -> None:
        _require(bool(self.prompt), "prompt must be non-empty")
        _require(bool(self.response), "response must be non-empty")
        _require(
            self.variant in ("shortcut", "journey", "phase1-correct-solution"),
            f"unknown training record variant {self.variant!r}",
        )


@dataclass(frozen=True)
class PreferencePair:
    problem_id: str
    chosen: str
    rejected: str
    chosen_correct: bool = True
    rejected_correct: bool = False

    def __post_init__(self) -> None:
        _require(self.chosen_correct and not self.rejected_correct, "pairs are chosen-correct / rejected-incorrect")


@dataclass(frozen=True)
class LabeledStepItem:
    problem: str
    steps: tuple[str, ...]
    labels: tuple[Verdict, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "labels", tuple(Verdict(v) for v in self.labels))
        _require(len(self.steps) >= 1, "every item needs at least one step")
        _require(len(self.labels) == len(self.steps), "labels must cover every step")


@dataclass(frozen=True)
class LabeledStepDataset:
    items: tuple[LabeledStepItem, ...]
    source_tag: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class BenchReport:
    """Confusion counts and derived metrics of one reward provider.

    The positive class is "incorrect": the benchmark measures how well a
    provider detects broken steps.
    """

    provider_id: str
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f1: float
    unjudgeable: int = 0
    positive_class: str = "incorrect"
    granularity: str = "step-level"

    def __post_init__(self) -> None:
        _require(min(self.tp, self.fp, self.fn, self.tn) >= 0, "confusion counts must be non-negative")
        for name in ("precision", "recall", "f1"):
            v = getattr(self, name)
            _require(0.0 <= v <= 1.0, f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class Violation:
    """One broken invariant, naming the offending node and the rule."""

    node_id: str
    rule: str
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "violations", tuple(self.violations))

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok
