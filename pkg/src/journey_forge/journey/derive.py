"""Correct-path marking, shortcut extraction, and journey traversal.

A shortcut is the degenerate all-advance path from the root to a correct
leaf. A journey is a constrained depth-first walk to that same leaf that
deliberately wanders into retained wrong branches: from a correct-path node
it may advance into an off-path child, descend without branching until it
hits a leaf or dead end, and then backtrack to where it left the path. Each
correct-path node grants ``max_trials_K`` descents, one of which is always
the on-path continuation, so at most ``max_trials_K - 1`` excursions start
there.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from ..model.ids import derive_seed
from ..model.ops import (
    children_index,
    correct_leaves,
    effective_reward,
    leaf_effectively_correct,
    path_from_root,
    reward_is_incorrect,
)
from ..model.types import (
    AnnotationRecord,
    EventKind,
    ExcursionChildPolicy,
    PathKind,
    ReasoningTree,
    TraversalConstraints,
    TraversalEvent,
    TraversalPath,
    TreeNode,
)

_UNSCORED_SORT_VALUE = 2.0  # orders unscored children after any real reward


class NoShortcutError(Exception):
    """The tree has no (effectively) correct leaf, so nothing anchors a path."""


def mark_correct_paths(tree: ReasoningTree, annotations: Sequence[AnnotationRecord] = ()) -> ReasoningTree:
    """Flag exactly the nodes lying on some root-to-correct-leaf path.

    Leaf correctness is resolved through annotations, so a human verdict can
    reroute every downstream derivation without touching the stored tree.
    """
    on_path: set[str] = set()
    for leaf in correct_leaves(tree, annotations):
        on_path.update(path_from_root(tree, leaf.node_id))
    updated: dict[str, TreeNode] = {}
    for node in tree.nodes.values():
        flag = node.node_id in on_path
        if node.on_correct_path != flag:
            updated[node.node_id] = _with_flag(node, flag)
    return tree.with_nodes(updated) if updated else tree


def _with_flag(node: TreeNode, flag: bool) -> TreeNode:
    from dataclasses import replace

    return replace(node, on_correct_path=flag)


def extract_shortcuts(tree: ReasoningTree, annotations: Sequence[AnnotationRecord] = ()) -> list[TraversalPath]:
    """One all-advance path per correct leaf, ordered by node-id sequence."""
    paths: list[TraversalPath] = []
    for leaf in correct_leaves(tree, annotations):
        chain = path_from_root(tree, leaf.node_id)
        events = tuple(TraversalEvent(kind=EventKind.ADVANCE, node_id=nid) for nid in chain[1:])
        paths.append(
            TraversalPath(tree_ref=tree.problem.id, kind=PathKind.SHORTCUT, events=events, trial_budget_K=1, seed=0)
        )
    paths.sort(key=lambda p: tuple(e.node_id for e in p.events))
    return paths


def traverse_journey(
    tree: ReasoningTree,
    constraints: TraversalConstraints,
    annotations: Sequence[AnnotationRecord] = (),
    anchor_index: int = 0,
) -> TraversalPath:
    """Constrained DFS producing a journey that ends at a correct leaf.

    ``anchor_index`` selects which shortcut anchors the walk; the default is
    the lexicographically smallest. Deterministic in (tree, constraints).
    """
    marked = mark_correct_paths(tree, annotations)
    shortcuts = extract_shortcuts(marked, annotations)
    if not shortcuts:
        raise NoShortcutError("no shortcut available: the tree has no correct leaf")
    anchor = shortcuts[anchor_index % len(shortcuts)]
    spine = [marked.root_id] + [e.node_id for e in anchor.events]

    kids = children_index(marked)
    rng = random.Random(derive_seed(constraints.seed, "journey", tree.problem.id))
    budget = constraints.max_trials_K - 1
    events: list[TraversalEvent] = []

    for position, node_id in enumerate(spine[:-1]):
        next_on_path = spine[position + 1]
        wrong = [c for c in kids[node_id] if not marked.nodes[c].on_correct_path]
        wrong = _order_children(wrong, marked, annotations, constraints.excursion_child_policy, rng)
        for child in wrong[: min(budget, len(wrong))]:
            events.extend(_descend(marked, kids, child, constraints.excursion_child_policy, annotations, rng))
            events.append(TraversalEvent(kind=EventKind.BACKTRACK, node_id=node_id))
        events.append(TraversalEvent(kind=EventKind.ADVANCE, node_id=next_on_path))

    return TraversalPath(
        tree_ref=tree.problem.id,
        kind=PathKind.JOURNEY,
        events=tuple(events),
        trial_budget_K=constraints.max_trials_K,
        seed=constraints.seed,
    )


def _order_children(
    children: list[str],
    tree: ReasoningTree,
    annotations: Sequence[AnnotationRecord],
    policy: ExcursionChildPolicy,
    rng: random.Random,
) -> list[str]:
    ordered = sorted(children)
    if policy is ExcursionChildPolicy.SEEDED_RANDOM:
        rng.shuffle(ordered)
        return ordered
    def sort_value(node_id: str) -> tuple[float, str]:
        reward = effective_reward(tree.nodes[node_id], annotations)
        return (reward.value if reward is not None else _UNSCORED_SORT_VALUE, node_id)
    ordered.sort(key=sort_value)
    return ordered


def _descend(
    tree: ReasoningTree,
    kids: dict[str, list[str]],
    start: str,
    policy: ExcursionChildPolicy,
    annotations: Sequence[AnnotationRecord],
    rng: random.Random,
) -> list[TraversalEvent]:
    """Advance into ``start`` and keep descending one child at a time.

    Off-path descent never branches; it stops at a childless node (an
    incorrect leaf or an open dead end, both of which trigger the same
    backtrack upstream).
    """
    events = [TraversalEvent(kind=EventKind.ADVANCE, node_id=start)]
    current = start
    while kids[current]:
        options = _order_children(list(kids[current]), tree, annotations, policy, rng)
        current = options[0]
        events.append(TraversalEvent(kind=EventKind.ADVANCE, node_id=current))
    return events


# ── reflections ──────────────────────────────────────────────────────


def _first_clause(text: str) -> str:
    for separator in (":", ";", "."):
        if separator in text:
            return text.split(separator, 1)[0].strip()
    return text.strip()


def attach_reflections(
    path: TraversalPath,
    tree: ReasoningTree,
    annotations: Sequence[AnnotationRecord] = (),
    mid_descent: bool = True,
    scalar_threshold: float = 0.5,
) -> TraversalPath:
    """Insert reflect events around the path's failures.

    After every advance into an incorrect-rewarded node the reward's
    rationale is voiced (or a templated fallback naming the step); before
    every backtrack a reflection states the failure and the return target.
    ``mid_descent=False`` keeps only the pre-backtrack reflections.
    """
    out: list[TraversalEvent] = []
    last_advanced: Optional[str] = None
    for event in path.events:
        if event.kind is EventKind.ADVANCE:
            out.append(event)
            last_advanced = event.node_id
            if mid_descent:
                node = tree.nodes[event.node_id]
                resolved = effective_reward(node, annotations)
                if reward_is_incorrect(resolved, scalar_threshold):
                    rationale = resolved.rationale if resolved and resolved.rationale else None
                    text = rationale or f"The step '{_first_clause(node.step_text)}' does not hold up; let me reconsider it."
                    out.append(TraversalEvent(kind=EventKind.REFLECT, node_id=event.node_id, text=text))
        elif event.kind is EventKind.BACKTRACK:
            target = tree.nodes[event.node_id]
            target_desc = f"'{_first_clause(target.step_text)}'" if target.step_text else "the beginning"
            failed_at = tree.nodes[last_advanced].step_text if last_advanced else ""
            text = (
                f"This attempt failed at '{_first_clause(failed_at)}'; better to return to {target_desc} "
                f"and continue from there."
            )
            out.append(TraversalEvent(kind=EventKind.REFLECT, node_id=last_advanced or event.node_id, text=text))
            out.append(event)
        else:
            out.append(event)
    return TraversalPath(
        tree_ref=path.tree_ref,
        kind=path.kind,
        events=tuple(out),
        trial_budget_K=path.trial_budget_K,
        seed=path.seed,
    )


# ── validity checks ──────────────────────────────────────────────────


def validate_traversal(tree: ReasoningTree, path: TraversalPath, annotations: Sequence[AnnotationRecord] = ()) -> list[str]:
    """Violations of the structural path invariants (empty list when valid)."""
    problems: list[str] = []
    advances = path.advances()
    if not advances:
        return ["path contains no advance events"]
    first = tree.nodes.get(advances[0].node_id)
    if first is None or first.depth != 1:
        problems.append("first advance must enter a depth-1 node")
    last = tree.nodes.get(advances[-1].node_id)
    if last is None or not leaf_effectively_correct(last, annotations):
        problems.append("last advance must enter a correct leaf")
    if path.kind is PathKind.SHORTCUT and any(e.kind is not EventKind.ADVANCE for e in path.events):
        problems.append("shortcut paths contain only advance events")

    stack = [tree.root_id]
    for i, event in enumerate(path.events):
        if event.kind is EventKind.ADVANCE:
            node = tree.nodes.get(event.node_id)
            if node is None:
                problems.append(f"event {i}: advance into unknown node {event.node_id}")
                break
            if node.parent_id != stack[-1]:
                problems.append(f"event {i}: advance into {event.node_id} is not a tree edge from {stack[-1]}")
                break
            stack.append(event.node_id)
        elif event.kind is EventKind.BACKTRACK:
            if event.node_id == stack[-1] or event.node_id not in stack:
                problems.append(f"event {i}: backtrack target {event.node_id} is not a proper ancestor of {stack[-1]}")
                break
            while stack[-1] != event.node_id:
                stack.pop()
        else:
            if not event.text:
                problems.append(f"event {i}: reflect event without text")
    return problems


def journey_violations(
    tree: ReasoningTree,
    path: TraversalPath,
    constraints: TraversalConstraints,
    annotations: Sequence[AnnotationRecord] = (),
) -> list[str]:
    """Check the journey-specific invariants by replaying the event list.

    Covers: shortcut-subsequence, backtrack well-formedness, the per-node
    trial budget, and DFS order (via stack simulation, shared with
    :func:`validate_traversal`). Seed determinism is checked by re-running
    :func:`traverse_journey`, which callers do directly.
    """
    marked = mark_correct_paths(tree, annotations)
    problems = validate_traversal(marked, path, annotations)

    on_path_advances = tuple(
        e.node_id for e in path.advances() if marked.nodes.get(e.node_id) and marked.nodes[e.node_id].on_correct_path
    )
    shortcut_sequences = {tuple(e.node_id for e in s.events) for s in extract_shortcuts(marked, annotations)}
    if on_path_advances not in shortcut_sequences:
        problems.append("on-path advances do not equal any extracted shortcut")

    excursions: dict[str, int] = {}
    stack = [marked.root_id]
    last_visited = marked.root_id
    budget = constraints.max_trials_K - 1
    for i, event in enumerate(path.events):
        if event.kind is EventKind.ADVANCE:
            node = marked.nodes.get(event.node_id)
            if node is None or node.parent_id != stack[-1]:
                break  # already reported by validate_traversal
            parent = marked.nodes[stack[-1]]
            if parent.on_correct_path and not node.on_correct_path:
                excursions[stack[-1]] = excursions.get(stack[-1], 0) + 1
                if excursions[stack[-1]] > budget:
                    problems.append(f"event {i}: node {stack[-1]} exceeds its excursion budget of {budget}")
            stack.append(event.node_id)
            last_visited = event.node_id
        elif event.kind is EventKind.BACKTRACK:
            expected = _nearest_on_path_ancestor(marked, last_visited)
            if event.node_id != expected:
                problems.append(
                    f"event {i}: backtrack returns to {event.node_id}, expected nearest on-path ancestor {expected}"
                )
            if expected is not None and excursions.get(expected, 0) > budget:
                problems.append(f"event {i}: backtrack target {expected} has no remaining trial budget")
            if event.node_id in stack and event.node_id != stack[-1]:
                while stack[-1] != event.node_id:
                    stack.pop()
                last_visited = event.node_id
    return problems


def _nearest_on_path_ancestor(tree: ReasoningTree, node_id: str) -> Optional[str]:
    current = tree.nodes[node_id].parent_id
    while current is not None:
        if tree.nodes[current].on_correct_path:
            return current
        current = tree.nodes[current].parent_id
    return None
