"""Deterministic synthetic oracle over one-variable linear equations.

The oracle family stands in for the policy model, the step reward model,
and the response generator at desk scale. A reasoning step is a named
transformation of the current equation; a step is correct exactly when the
transformed equation has the same solution set as the one before it, which
is decidable and brute-forceable, so the reward oracle can be checked
against an independent solver in tests.

Every provider here is a pure function of its inputs plus the caller's
seed: identical (task, prefix, w, seed) produce identical candidates across
processes.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..model.ids import derive_seed
from ..model.types import ProblemInstance, ProblemSource, ProposalBatch, RewardKind, SamplingParams, StepReward
from .answer_check import BOXED_MARKER, extract_boxed, normalize_answer
from .base import ParseError, UnjudgeableError

_SIDE_WITH_X = re.compile(r"^(-?\d*)x([+-]\d+(?:/\d+)?)?$")
_SIDE_CONST = re.compile(r"^(-?\d+(?:/\d+)?)$")

STEP_RULES = (
    "subtract-x-term",
    "add-x-term",
    "subtract-constant",
    "add-constant",
    "divide-by-coefficient",
    "state-solution",
    "rewrite",
)


@dataclass(frozen=True)
class LinearEquation:
    """``a·x + b = c·x + d`` with integer x-coefficients.

    Constants may become fractions after a division step; x-coefficients
    stay integral under every rule the oracle applies.
    """

    a: int
    b: Fraction
    c: int
    d: Fraction

    def solution(self) -> Optional[Fraction]:
        """The unique solution, or None when the equation is degenerate."""
        if self.a == self.c:
            return None
        return (self.d - self.b) / (self.a - self.c)

    def degenerate_kind(self) -> Optional[str]:
        if self.a != self.c:
            return None
        return "identity" if self.b == self.d else "contradiction"

    def render(self) -> str:
        return f"{_render_side(self.a, self.b)} = {_render_side(self.c, self.d)}"


def _render_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _render_side(coef: int, const: Fraction) -> str:
    if coef == 0:
        return _render_fraction(const)
    if coef == 1:
        head = "x"
    elif coef == -1:
        head = "-x"
    else:
        head = f"{coef}x"
    if const == 0:
        return head
    sign = "+" if const > 0 else "-"
    return f"{head} {sign} {_render_fraction(abs(const))}"


def _parse_side(text: str) -> tuple[int, Fraction]:
    compact = text.replace(" ", "")
    match = _SIDE_WITH_X.match(compact)
    if match:
        coef_raw = match.group(1)
        coef = {"": 1, "-": -1}.get(coef_raw, None)
        if coef is None:
            coef = int(coef_raw)
        const = Fraction(match.group(2)) if match.group(2) else Fraction(0)
        return coef, const
    match = _SIDE_CONST.match(compact)
    if match:
        return 0, Fraction(match.group(1))
    raise ParseError(f"cannot parse equation side {text!r}", payload=text)


def parse_equation(text: str) -> LinearEquation:
    if text.count("=") != 1:
        raise ParseError(f"expected a single '=' in {text!r}", payload=text)
    lhs, rhs = text.split("=")
    a, b = _parse_side(lhs)
    c, d = _parse_side(rhs)
    return LinearEquation(a, b, c, d)


@dataclass(frozen=True)
class SyntheticTask:
    """One generated problem: the starting equation and its unique solution."""

    start_equation: str
    solution: Fraction
    step_rules: tuple[str, ...] = STEP_RULES

    @property
    def equation(self) -> LinearEquation:
        return parse_equation(self.start_equation)


STATEMENT_PREFIX = "Solve for x: "


def make_problem(task: SyntheticTask, problem_id: str, difficulty_tag: Optional[str] = None) -> ProblemInstance:
    return ProblemInstance(
        id=problem_id,
        statement=STATEMENT_PREFIX + task.start_equation,
        gold_answer=_render_fraction(task.solution),
        source=ProblemSource.SYNTHETIC,
        difficulty_tag=difficulty_tag,
    )


def task_from_problem(problem: ProblemInstance) -> SyntheticTask:
    statement = problem.statement
    if not statement.startswith(STATEMENT_PREFIX):
        raise ParseError(f"not a synthetic linear-equation problem: {statement!r}", payload=statement)
    equation = parse_equation(statement[len(STATEMENT_PREFIX) :])
    solution = equation.solution()
    if solution is None:
        raise ParseError(f"degenerate synthetic problem: {statement!r}", payload=statement)
    return SyntheticTask(start_equation=equation.render(), solution=solution)


def generate_task(seed: int) -> SyntheticTask:
    """Seeded task with a unique rational solution and integer coefficients."""
    rng = random.Random(derive_seed("task", seed))
    denominator = rng.choice((1, 1, 1, 2, 3, 4))
    numerator = rng.choice([v for v in range(-9, 10) if v != 0])
    solution = Fraction(numerator, denominator)
    diff = denominator * rng.randint(1, 4)
    c = rng.choice((0, 0, 0, rng.randint(1, 5)))
    a = c + diff
    b = Fraction(rng.randint(-9, 9))
    d = solution * diff + b
    equation = LinearEquation(a, b, c, d)
    assert equation.solution() == solution
    return SyntheticTask(start_equation=equation.render(), solution=solution)


def generate_problem(seed: int, problem_id: Optional[str] = None) -> ProblemInstance:
    task = generate_task(seed)
    return make_problem(task, problem_id or f"lin-{seed:06d}")


# ── step texts ───────────────────────────────────────────────────────


def step_text(action: str, equation: LinearEquation) -> str:
    return f"{action}: {equation.render()}"


def terminal_step_text(value: Fraction) -> str:
    rendered = _render_fraction(value)
    return f"So the solution is x = {rendered}. {BOXED_MARKER}{rendered}}}"


def is_terminal_step(step: str) -> bool:
    return BOXED_MARKER in step


def parse_step_equation(step: str) -> LinearEquation:
    if ":" not in step:
        raise ParseError(f"step has no action/equation separator: {step!r}", payload=step)
    _, equation_text = step.split(":", 1)
    return parse_equation(equation_text.strip())


def state_after_prefix(task: SyntheticTask, prefix: Sequence[str]) -> LinearEquation:
    """Equation implied by the last non-terminal step of the prefix."""
    for step in reversed(prefix):
        if not is_terminal_step(step):
            return parse_step_equation(step)
        # Terminal steps restate the current value; the state is unchanged
        # by them, so keep scanning backwards.
    return task.equation


def canonical_move(state: LinearEquation) -> tuple[str, Optional[LinearEquation]]:
    """The solving move the oracle considers correct from ``state``.

    Returns (step text, new state); the new state is None for the terminal
    answer-statement move.
    """
    kind = state.degenerate_kind()
    if kind is not None:
        # Broken branches can reach degenerate states; restating them is the
        # only solution-preserving move left.
        return step_text("Rewrite the equation", state), state
    if state.c != 0:
        k = state.c
        action = f"Subtract {k}x from both sides" if k > 0 else f"Add {-k}x to both sides"
        new = LinearEquation(state.a - k, state.b, 0, state.d)
        return step_text(action, new), new
    if state.b != 0:
        k = state.b
        action = f"Subtract {_render_fraction(k)} from both sides" if k > 0 else f"Add {_render_fraction(-k)} to both sides"
        new = LinearEquation(state.a, Fraction(0), 0, state.d - k)
        return step_text(action, new), new
    if state.a != 1:
        k = state.a
        new = LinearEquation(1, Fraction(0), 0, state.d / k)
        return step_text(f"Divide both sides by {k}", new), new
    return terminal_step_text(state.d), None


def _broken_variant(state: LinearEquation, correct_step: str, new_state: Optional[LinearEquation], delta: int) -> str:
    """Same action as the canonical move, with an arithmetic slip of ``delta``."""
    if new_state is None:
        value = state.d + delta
        return terminal_step_text(value)
    action = correct_step.split(":", 1)[0]
    slipped = LinearEquation(new_state.a, new_state.b, new_state.c, new_state.d + delta)
    return step_text(action, slipped)


class OraclePolicy:
    """Single-step proposer: one solving move plus seeded arithmetic slips."""

    provider_id = "oracle:linear-policy"

    def propose(self, problem: ProblemInstance, prefix: Sequence[str], w: int, seed: int) -> ProposalBatch:
        if w < 1:
            raise ValueError("w must be >= 1")
        task = task_from_problem(problem)
        state = state_after_prefix(task, prefix)
        correct_step, new_state = canonical_move(state)

        rng = random.Random(derive_seed("propose", task.start_equation, tuple(prefix), w, seed))
        deltas = rng.sample(range(1, 40), w - 1) if w > 1 else []
        candidates = [correct_step]
        for i, magnitude in enumerate(deltas):
            delta = magnitude if i % 2 == 0 else -magnitude
            candidates.append(_broken_variant(state, correct_step, new_state, delta))
        rng.shuffle(candidates)
        return ProposalBatch(prefix=tuple(prefix), candidates=tuple(candidates), provider_id=self.provider_id)


class OracleReward:
    """Binary step judge: correct iff the step preserves the solution set."""

    provider_id = "oracle:linear-reward"

    def judge(self, problem: ProblemInstance, prefix: Sequence[str], step: str) -> StepReward:
        if not step.strip():
            raise UnjudgeableError("empty step")
        task = task_from_problem(problem)
        before = state_after_prefix(task, prefix)
        before_solution = before.solution()

        if is_terminal_step(step):
            claimed = extract_boxed(step)
            if claimed is None:
                raise UnjudgeableError(f"unreadable final-answer step: {step!r}")
            if before_solution is None:
                return self._verdict(False, f"the equation {before.render()} has no unique solution, so stating x = {claimed} is unfounded")
            expected = _render_fraction(before_solution)
            if normalize_answer(claimed) == normalize_answer(expected):
                return self._verdict(True, f"stating the solution x = {expected} matches {before.render()}")
            return self._verdict(False, f"'state the solution' is broken: {before.render()} gives x = {expected}, not x = {claimed}")

        try:
            after = parse_step_equation(step)
        except ParseError as exc:
            raise UnjudgeableError(f"cannot parse step equation: {step!r}") from exc
        action = step.split(":", 1)[0]
        if _same_solution_set(before, after):
            return self._verdict(True, f"'{action}' keeps {before.render()} solution-equivalent")
        return self._verdict(
            False,
            f"'{action}' is broken: {before.render()} and {after.render()} do not share a solution set",
        )

    def _verdict(self, correct: bool, rationale: str) -> StepReward:
        return StepReward(
            kind=RewardKind.BINARY,
            value=1.0 if correct else 0.0,
            rationale=rationale,
            provider_id=self.provider_id,
        )


def _same_solution_set(first: LinearEquation, second: LinearEquation) -> bool:
    s1, s2 = first.solution(), second.solution()
    if s1 is None or s2 is None:
        return first.degenerate_kind() == second.degenerate_kind() and s1 is None and s2 is None
    return s1 == s2


def brute_force_solution_check(before: LinearEquation, after: LinearEquation, span: int = 60) -> bool:
    """Independent solution-set comparison by candidate substitution.

    Probes every rational p/q with |p| <= span and q <= 4 plus the solved
    roots of both equations; used by tests to cross-check the reward oracle
    without reusing its solver path.
    """

    def satisfies(eq: LinearEquation, x: Fraction) -> bool:
        return eq.a * x + eq.b == eq.c * x + eq.d

    probes = {Fraction(p, q) for q in (1, 2, 3, 4) for p in range(-span, span + 1)}
    for eq in (before, after):
        root = eq.solution()
        if root is not None:
            probes.add(root)
    return all(satisfies(before, x) == satisfies(after, x) for x in sorted(probes))


class PlantedResponseGenerator:
    """Full-response sampler that plants a known number of correct answers.

    With ``correct_count`` unset, the count is drawn (seeded) from a wide
    range so downstream categorization sees varied splits.
    """

    def __init__(self, correct_count: Optional[int] = None):
        self.correct_count = correct_count
        self.provider_id = f"oracle:planted-responses({correct_count if correct_count is not None else 'seeded'})"

    def generate(self, problem: ProblemInstance, params: SamplingParams, seed: int) -> list[str]:
        rng = random.Random(derive_seed("responses", problem.id, params.n_samples, seed))
        n = params.n_samples
        correct = self.correct_count if self.correct_count is not None else rng.randint(0, n)
        correct = max(0, min(n, correct))
        flags = [True] * correct + [False] * (n - correct)
        rng.shuffle(flags)
        responses = []
        for i, is_correct in enumerate(flags):
            if is_correct:
                answer = problem.gold_answer
            else:
                answer = _render_fraction(Fraction(problem.gold_answer) + rng.randint(1, 25))
            responses.append(
                f"Attempt {i + 1}: solving {problem.statement[len(STATEMENT_PREFIX):] if problem.statement.startswith(STATEMENT_PREFIX) else problem.statement}.\n"
                f"I rearrange the terms and simplify both sides.\n"
                f"So the final answer is {BOXED_MARKER}{answer}}}."
            )
        return responses
