"""On-policy tree construction: iterative expansion with beam pruning.

Each iteration proposes ``width_w`` children for every live frontier node,
judges them, and keeps at most ``beam_K`` survivors. Pruned children stay
in the tree (flagged) because the journey traversal later needs wrong
branches to wander into; they are simply never expanded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from ..model.ids import IdAllocator, derive_seed, scope_prefix
from ..model.ops import prefix_steps, reward_is_incorrect
from ..model.types import (
    BuildParams,
    FrontierState,
    LeafStatus,
    ProblemInstance,
    Provenance,
    PruneMode,
    ReasoningTree,
    StepReward,
    TreeNode,
)
from ..providers.answer_check import BOXED_MARKER, final_answer
from ..providers.base import PolicyProvider, ProviderError, RewardProvider

Checker = Callable[[str, str], bool]


class TreeBuildAborted(Exception):
    """Provider failure mid-build; carries the partial tree and a manifest."""

    def __init__(self, message: str, partial_tree: ReasoningTree, manifest: dict):
        super().__init__(message)
        self.partial_tree = partial_tree
        self.manifest = manifest


@dataclass
class BuilderConfig:
    """Knobs the core algorithm does not fix.

    ``answer_pattern`` extends terminal detection beyond the boxed marker;
    ``relax_on_zero_survivors`` keeps the single best incorrect child alive
    when binary filtering would otherwise end the build early (off by
    default: weak judges should fail loudly, not sneak wrong steps onto the
    frontier).
    """

    answer_pattern: Optional[str] = None
    relax_on_zero_survivors: bool = False
    scalar_threshold: float = 0.5


def is_terminal_step(step: str, answer_pattern: Optional[str] = None) -> bool:
    if BOXED_MARKER in step:
        return True
    return bool(answer_pattern and re.search(answer_pattern, step))


@dataclass
class _Pending:
    node_id: str
    parent_id: str
    step_text: str
    depth: int
    reward: StepReward
    terminal: bool
    leaf_status: LeafStatus
    selected: bool = field(default=False)


def build_tree(
    problem: ProblemInstance,
    policy: PolicyProvider,
    reward: RewardProvider,
    checker: Checker,
    params: BuildParams,
    config: Optional[BuilderConfig] = None,
    frontier_log: Optional[list[FrontierState]] = None,
) -> ReasoningTree:
    """Construct a reasoning tree for ``problem`` under ``params``.

    Stops when the depth limit is reached, every frontier leaf is terminal,
    or pruning leaves no survivors. Deterministic given deterministic
    providers and the params seed.
    """
    config = config or BuilderConfig()
    allocator = IdAllocator(scope_prefix(problem.id, params.seed))
    root_id = allocator.allocate()
    nodes: dict[str, TreeNode] = {
        root_id: TreeNode(
            node_id=root_id,
            parent_id=None,
            step_text="",
            depth=0,
            terminal=False,
            leaf_status=LeafStatus.OPEN,
        )
    }
    frontier: list[str] = [root_id]
    policy_calls = 0
    generated = 0

    def partial_tree() -> ReasoningTree:
        return ReasoningTree(
            problem=problem,
            params=params,
            root_id=root_id,
            nodes=nodes,
            policy_call_count=policy_calls,
            provenance=Provenance.ON_POLICY,
        )

    for iteration in range(1, params.max_depth_D + 1):
        if not frontier:
            break
        pending: list[_Pending] = []
        for parent_id in frontier:
            prefix = [nodes[nid].step_text for nid in _chain(nodes, parent_id)]
            expansion_seed = derive_seed(params.seed, "expand", parent_id)
            try:
                batch = policy.propose(problem, prefix, params.width_w, expansion_seed)
            except ProviderError as exc:
                raise TreeBuildAborted(
                    f"policy failed expanding {parent_id}: {exc}",
                    partial_tree(),
                    {"stage": "propose", "parent_id": parent_id, "iteration": iteration, "error": str(exc)},
                ) from exc
            policy_calls += 1
            generated += len(batch.candidates)
            for candidate in batch.candidates:
                try:
                    step_reward = reward.judge(problem, prefix, candidate)
                except ProviderError as exc:
                    raise TreeBuildAborted(
                        f"reward failed judging a child of {parent_id}: {exc}",
                        partial_tree(),
                        {"stage": "judge", "parent_id": parent_id, "iteration": iteration, "error": str(exc)},
                    ) from exc
                terminal = is_terminal_step(candidate, config.answer_pattern)
                if terminal:
                    status = LeafStatus.CORRECT if checker(candidate, problem.gold_answer) else LeafStatus.INCORRECT
                else:
                    status = LeafStatus.OPEN
                pending.append(
                    _Pending(
                        node_id=allocator.allocate(),
                        parent_id=parent_id,
                        step_text=candidate,
                        depth=iteration,
                        reward=step_reward,
                        terminal=terminal,
                        leaf_status=status,
                    )
                )

        survivors = _select_survivors(pending, params, config)
        for child in pending:
            nodes[child.node_id] = TreeNode(
                node_id=child.node_id,
                parent_id=child.parent_id,
                step_text=child.step_text,
                depth=child.depth,
                reward=child.reward,
                terminal=child.terminal,
                leaf_status=child.leaf_status,
                pruned=not child.selected,
            )
        frontier = [c.node_id for c in survivors if not c.terminal]
        frontier.sort()
        if frontier_log is not None:
            frontier_log.append(FrontierState(iteration=iteration, live_nodes=tuple(frontier), generated_this_run=generated))
        if not frontier:
            break

    return ReasoningTree(
        problem=problem,
        params=params,
        root_id=root_id,
        nodes=nodes,
        policy_call_count=policy_calls,
        provenance=Provenance.ON_POLICY,
    )


def _chain(nodes: dict[str, TreeNode], node_id: str) -> list[str]:
    chain: list[str] = []
    current: Optional[str] = node_id
    while current is not None and nodes[current].parent_id is not None:
        chain.append(current)
        current = nodes[current].parent_id
    chain.reverse()
    return chain


def _select_survivors(pending: Sequence[_Pending], params: BuildParams, config: BuilderConfig) -> list[_Pending]:
    if not pending:
        return []
    if params.prune_mode is PruneMode.SCALAR_TOP_K:
        ranked = sorted(pending, key=lambda c: (-c.reward.value, c.node_id))
        survivors = ranked[: params.beam_K]
    else:
        correct = [c for c in pending if not reward_is_incorrect(c.reward, config.scalar_threshold)]
        correct.sort(key=lambda c: c.node_id)
        survivors = correct[: params.beam_K]
        if not survivors and config.relax_on_zero_survivors:
            ranked = sorted(pending, key=lambda c: (-c.reward.value, c.node_id))
            survivors = ranked[:1]
    for child in survivors:
        child.selected = True
    return survivors
