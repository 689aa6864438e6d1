from __future__ import annotations

import pytest

from journey_forge.model.types import (  # noqa: E402
    BuildParams,
    LeafStatus,
    ProblemInstance,
    ProblemSource,
    Provenance,
    PruneMode,
    ReasoningTree,
    RewardKind,
    StepReward,
    TreeNode,
)

_acceptance_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, outcome in _acceptance_results:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"  [{verdict}] {name}")


def binary(value: float, rationale: str = "fixture verdict") -> StepReward:
    return StepReward(kind=RewardKind.BINARY, value=value, rationale=rationale, provider_id="fixture")


def scalar(value: float) -> StepReward:
    return StepReward(kind=RewardKind.SCALAR, value=value, provider_id="fixture")


def node(
    node_id: str,
    parent_id: str | None,
    step: str,
    depth: int,
    reward: StepReward | None = None,
    terminal: bool = False,
    status: LeafStatus = LeafStatus.OPEN,
    pruned: bool = False,
    on_correct_path: bool = False,
) -> TreeNode:
    return TreeNode(
        node_id=node_id,
        parent_id=parent_id,
        step_text=step,
        depth=depth,
        reward=reward,
        terminal=terminal,
        leaf_status=status,
        pruned=pruned,
        on_correct_path=on_correct_path,
    )


def make_tree(nodes: list[TreeNode], problem: ProblemInstance | None = None, max_depth: int = 4) -> ReasoningTree:
    problem = problem or ProblemInstance(
        id="fix-prob",
        statement="Solve for x: 2x + 4 = 10",
        gold_answer="3",
        source=ProblemSource.SYNTHETIC,
    )
    return ReasoningTree(
        problem=problem,
        params=BuildParams(width_w=2, max_depth_D=max_depth, beam_K=2, prune_mode=PruneMode.BINARY_FILTER, seed=0),
        root_id=nodes[0].node_id,
        nodes={n.node_id: n for n in nodes},
        policy_call_count=0,
        provenance=Provenance.ON_POLICY,
    )


@pytest.fixture
def chain_tree() -> ReasoningTree:
    """root -> c1 -> c2 -> c3, where c3 is the single correct leaf."""
    return make_tree(
        [
            node("n0", None, "", 0),
            node("n1", "n0", "Subtract 4 from both sides: 2x = 6", 1, binary(1.0)),
            node("n2", "n1", "Divide both sides by 2: x = 3", 2, binary(1.0)),
            node("n3", "n2", "So the solution is x = 3. \\boxed{3}", 3, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
        ]
    )


@pytest.fixture
def journey_tree() -> ReasoningTree:
    """One wrong depth-1 branch reaching an incorrect leaf at depth 2.

    root -> A (on path) -> {A1 correct leaf, A2 wrong open leaf}
         -> B (wrong)   -> B1 terminal incorrect leaf
    """
    return make_tree(
        [
            node("n0", None, "", 0),
            node("n1", "n0", "Subtract 4 from both sides: 2x = 6", 1, binary(1.0)),
            node("n2", "n0", "Subtract 4 from both sides: 2x = 7", 1, binary(0.0, "the subtraction is off by one"), pruned=True),
            node("n3", "n1", "Divide both sides by 2: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
            node("n4", "n1", "Divide both sides by 2: x = 4", 2, binary(0.0, "dividing 6 by 2 gives 3, not 4"), pruned=True),
            node("n5", "n2", "So the solution is x = 3.5. \\boxed{3.5}", 2, binary(0.0, "follows from a broken step"), terminal=True, status=LeafStatus.INCORRECT),
        ]
    )


@pytest.fixture
def twin_tree() -> ReasoningTree:
    """Two correct leaves sharing the depth-1 ancestor, plus one wrong leaf."""
    return make_tree(
        [
            node("n0", None, "", 0),
            node("n1", "n0", "Subtract 4 from both sides: 2x = 6", 1, binary(1.0)),
            node("n2", "n1", "Divide both sides by 2: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
            node("n3", "n1", "Halve both sides: x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
            node("n4", "n1", "Divide both sides by 2: x = 8", 2, binary(0.0, "dividing 6 by 2 gives 3, not 8"), pruned=True),
        ]
    )


@pytest.fixture
def reflection_tree() -> ReasoningTree:
    """Two single-node excursions: one wrong leaf under the root, one under A."""
    return make_tree(
        [
            node("n0", None, "", 0),
            node("n1", "n0", "Subtract 4 from both sides: 2x = 6", 1, binary(1.0)),
            node("n2", "n0", "Subtract 4 from both sides: 2x = 7", 1, binary(0.0, "the subtraction is off by one"), pruned=True),
            node("n3", "n1", "So the solution is x = 3. \\boxed{3}", 2, binary(1.0), terminal=True, status=LeafStatus.CORRECT),
            node("n4", "n1", "Divide both sides by 2: x = 4", 2, binary(0.0, "dividing 6 by 2 gives 3, not 4"), pruned=True),
        ]
    )
