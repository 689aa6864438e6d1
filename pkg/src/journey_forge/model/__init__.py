from .types import (
    AnnotationRecord,
    BenchReport,
    BuildParams,
    EventKind,
    ExcursionChildPolicy,
    FrontierState,
    LabeledStepDataset,
    LabeledStepItem,
    LeafStatus,
    LongThought,
    PathKind,
    PreferencePair,
    ProblemInstance,
    ProblemSource,
    ProposalBatch,
    Provenance,
    PruneMode,
    ReasoningTree,
    RewardKind,
    RunSummary,
    SamplingParams,
    StepReward,
    ThoughtStats,
    TrainingRecord,
    TraversalConstraints,
    TraversalEvent,
    TraversalPath,
    TreeNode,
    ValidationReport,
    Verdict,
    Violation,
)
from .ops import (
    ANNOTATION_PROVIDER_ID,
    DEFAULT_SCALAR_THRESHOLD,
    ancestors,
    children_index,
    correct_leaves,
    effective_reward,
    expected_generation_count,
    iter_leaves,
    latest_annotation,
    leaf_effectively_correct,
    path_from_root,
    per_iteration_generation_total,
    prefix_steps,
    reward_is_incorrect,
    validate_tree,
)

__all__ = [name for name in dir() if not name.startswith("_")]
