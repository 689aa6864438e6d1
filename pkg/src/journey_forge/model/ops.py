"""Tree validity checking, reward resolution, and generation-count formulas."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .types import (
    AnnotationRecord,
    LeafStatus,
    Provenance,
    ReasoningTree,
    RewardKind,
    StepReward,
    TreeNode,
    ValidationReport,
    Verdict,
    Violation,
)

ANNOTATION_PROVIDER_ID = "human-annotation"

# Scalar rewards below this are treated as "incorrect" wherever a hard
# verdict is needed (reflections, lowest-reward ordering). Configurable at
# the call sites that expose it.
DEFAULT_SCALAR_THRESHOLD = 0.5


def children_index(tree: ReasoningTree) -> dict[str, list[str]]:
    """Map each node id to its children, ordered by node id."""
    index: dict[str, list[str]] = {node_id: [] for node_id in tree.nodes}
    for node in tree.nodes.values():
        if node.parent_id is not None and node.parent_id in index:
            index[node.parent_id].append(node.node_id)
    for kids in index.values():
        kids.sort()
    return index


def ancestors(tree: ReasoningTree, node_id: str) -> list[str]:
    """Node ids from ``node_id``'s parent up to the root."""
    chain: list[str] = []
    current = tree.nodes[node_id].parent_id
    while current is not None:
        chain.append(current)
        current = tree.nodes[current].parent_id
    return chain


def path_from_root(tree: ReasoningTree, node_id: str) -> list[str]:
    """Node ids from the root down to ``node_id`` inclusive."""
    chain = list(reversed(ancestors(tree, node_id)))
    chain.append(node_id)
    return chain


def prefix_steps(tree: ReasoningTree, node_id: str) -> list[str]:
    """Step texts from the first step down to ``node_id`` (root's empty text excluded)."""
    return [tree.nodes[nid].step_text for nid in path_from_root(tree, node_id) if tree.nodes[nid].parent_id is not None]


def validate_tree(tree: ReasoningTree) -> ValidationReport:
    """Check every structural invariant, returning one violation per breach.

    The report is empty exactly when the tree is a single-rooted acyclic
    graph with consistent depths, status flags, and (for on-policy trees)
    per-depth population within the beam bound.
    """
    violations: list[Violation] = []
    nodes = tree.nodes

    roots = [n for n in nodes.values() if n.parent_id is None]
    if len(roots) != 1:
        for n in roots[1:] if roots else []:
            violations.append(Violation(n.node_id, "multiple-roots"))
        if not roots:
            violations.append(Violation(tree.root_id, "no-root", "no node without a parent"))
    if tree.root_id in nodes:
        root = nodes[tree.root_id]
        if root.parent_id is not None:
            violations.append(Violation(tree.root_id, "root-has-parent"))
        if root.depth != 0:
            violations.append(Violation(tree.root_id, "root-depth", f"depth {root.depth}"))
        if root.step_text:
            violations.append(Violation(tree.root_id, "root-step-text", "root carries step text"))

    for node in nodes.values():
        if node.parent_id is not None and node.parent_id not in nodes:
            violations.append(Violation(node.node_id, "dangling-parent", node.parent_id))

    # Reachability doubles as the cycle check: a parent chain that never
    # reaches the root either dangles or loops.
    for node in nodes.values():
        seen: set[str] = set()
        current: Optional[str] = node.node_id
        while current is not None:
            if current in seen:
                violations.append(Violation(node.node_id, "cycle", f"parent chain revisits {current}"))
                break
            seen.add(current)
            parent = nodes[current].parent_id if current in nodes else None
            if parent is None:
                if current != tree.root_id and current in nodes:
                    violations.append(Violation(node.node_id, "unreachable", f"chain ends at {current}"))
                break
            if parent not in nodes:
                break
            current = parent

    for node in nodes.values():
        if node.parent_id is not None and node.parent_id in nodes:
            expected = nodes[node.parent_id].depth + 1
            if node.depth != expected:
                violations.append(Violation(node.node_id, "depth-mismatch", f"depth {node.depth}, parent implies {expected}"))
        if node.depth > tree.params.max_depth_D:
            violations.append(Violation(node.node_id, "depth-exceeds-max", f"depth {node.depth} > {tree.params.max_depth_D}"))
        if node.terminal and node.leaf_status is LeafStatus.OPEN:
            violations.append(Violation(node.node_id, "status/terminal mismatch", "terminal node is open"))
        if node.leaf_status is LeafStatus.CORRECT and not node.terminal:
            violations.append(Violation(node.node_id, "status/terminal mismatch", "correct node is not terminal"))

    if tree.provenance is Provenance.ON_POLICY:
        census: dict[int, int] = {}
        for node in nodes.values():
            if node.depth >= 1:
                census[node.depth] = census.get(node.depth, 0) + 1
        bound = tree.params.width_w * tree.params.beam_K
        for depth, count in sorted(census.items()):
            if count > bound:
                violations.append(Violation(tree.root_id, "depth-population", f"{count} nodes at depth {depth} > w*K = {bound}"))

    return ValidationReport(tuple(violations))


def latest_annotation(node_id: str, annotations: Sequence[AnnotationRecord]) -> Optional[AnnotationRecord]:
    """Last record in log order targeting ``node_id``, if any."""
    found = None
    for record in annotations:
        if record.node_id == node_id:
            found = record
    return found


def effective_reward(node: TreeNode, annotations: Sequence[AnnotationRecord]) -> Optional[StepReward]:
    """Resolve the reward a consumer should act on.

    The latest annotation targeting the node shadows the stored machine
    reward as a binary verdict; with neither, ``None`` is the "unknown"
    sentinel. Pure in (node, annotation order).
    """
    record = latest_annotation(node.node_id, annotations)
    if record is not None:
        return StepReward(
            kind=RewardKind.BINARY,
            value=1.0 if record.verdict is Verdict.CORRECT else 0.0,
            provider_id=ANNOTATION_PROVIDER_ID,
            rationale=record.comment or f"human verdict by {record.author}",
        )
    return node.reward


def reward_is_incorrect(reward: Optional[StepReward], scalar_threshold: float = DEFAULT_SCALAR_THRESHOLD) -> bool:
    """Whether a resolved reward counts as a hard "incorrect"."""
    if reward is None:
        return False
    if reward.kind is RewardKind.BINARY:
        return reward.value == 0.0
    return reward.value < scalar_threshold


def leaf_effectively_correct(node: TreeNode, annotations: Sequence[AnnotationRecord]) -> bool:
    """Whether a leaf counts as a correct answer once annotations are applied.

    Annotations override the machine's answer check outright: the latest
    verdict decides; absent one, the stored leaf status decides. Only
    terminal nodes can qualify.
    """
    if not node.terminal:
        return False
    record = latest_annotation(node.node_id, annotations)
    if record is not None:
        return record.verdict is Verdict.CORRECT
    return node.leaf_status is LeafStatus.CORRECT


def correct_leaves(tree: ReasoningTree, annotations: Sequence[AnnotationRecord] = ()) -> list[TreeNode]:
    """Terminal nodes that are effectively correct, ordered by node id."""
    leaves = [n for n in tree.nodes.values() if leaf_effectively_correct(n, annotations)]
    leaves.sort(key=lambda n: n.node_id)
    return leaves


def expected_generation_count(w: int, K: int, D: int, pruned: bool) -> int:
    """Total candidate steps a build may generate.

    Without pruning the whole width-``w`` tree of depth ``D`` costs
    ``(w**D - 1) / (w - 1)`` generations; beam pruning caps the cost at
    ``w * K * D``. Python integers are unbounded, so the result is always
    exact (no silent wraparound is possible).
    """
    if min(w, K, D) < 1:
        raise ValueError("w, K, and D must all be >= 1")
    if pruned:
        return w * K * D
    if w < 2:
        raise ValueError("unpruned count requires w >= 2")
    return (w**D - 1) // (w - 1)


def per_iteration_generation_total(w: int, D: int) -> int:
    """Alternative unpruned convention: sum of per-iteration batch sizes.

    Counts ``w + w**2 + ... + w**D`` — the reading under which the final
    iteration alone generates ``w**D`` steps. Exposed alongside
    :func:`expected_generation_count` because the two conventions disagree;
    callers pick one explicitly.
    """
    if w < 1 or D < 1:
        raise ValueError("w and D must be >= 1")
    if w == 1:
        return D
    return (w ** (D + 1) - w) // (w - 1)


def iter_leaves(tree: ReasoningTree) -> Iterable[TreeNode]:
    """Nodes without children, ordered by node id."""
    index = children_index(tree)
    for node_id in sorted(tree.nodes):
        if not index[node_id]:
            yield tree.nodes[node_id]
