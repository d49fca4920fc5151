"""Worklist-driven symbolic exploration and the bug finder built on it."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from . import solver
from .concrete import ConcState, Env, StuckAt, exec_
from .symbolic import SymState, expand, initial_state, is_stuck_sym, simulates
from .syntax import TRUE, Bexpr, Stmt


class Strategy(enum.Enum):
    BFS = "bfs"
    DFS = "dfs"


@dataclass(frozen=True)
class Pending:
    pass


@dataclass(frozen=True)
class Finished:
    pass


@dataclass(frozen=True)
class BugFound:
    state: SymState


Status = Union[Pending, Finished, BugFound]

PENDING = Pending()
FINISHED = Finished()


class StateStream:
    """Unbounded stream of optional symbolic states.

    Each ``next()`` yields the head of the worklist (``None`` once it is
    empty, forever after) and replaces it by its successors: appended at the
    back under BFS, pushed at the front under DFS.  With ``prune`` set,
    successors whose path condition the solver proves unsatisfiable are
    dropped before they are enqueued.
    """

    def __init__(
        self,
        worklist: Iterable[SymState],
        strategy: Strategy = Strategy.BFS,
        prune: bool = False,
        solver_budget: int = solver.DEFAULT_BUDGET,
    ):
        self.worklist = deque(worklist)
        self.strategy = strategy
        self.prune = prune
        self.solver_budget = solver_budget
        self.pulls = 0
        # Worklist length (head included) seen by the most recent pull.
        self.last_worklist_len = 0

    def __iter__(self) -> "StateStream":
        return self

    def __next__(self) -> Optional[SymState]:
        self.pulls += 1
        self.last_worklist_len = len(self.worklist)
        if not self.worklist:
            return None
        head = self.worklist.popleft()
        succ = expand(head)
        if self.prune:
            succ = [s for s in succ if not self._infeasible(head, s)]
        if self.strategy is Strategy.BFS:
            self.worklist.extend(succ)
        else:
            self.worklist.extendleft(reversed(succ))
        return head

    def _infeasible(self, parent: SymState, s: SymState) -> bool:
        if s.path is parent.path:
            return False
        return isinstance(solver.is_sat(s.path, self.solver_budget), solver.Unsat)


def run(
    worklist: Iterable[SymState],
    strategy: Strategy = Strategy.BFS,
    prune: bool = False,
    solver_budget: int = solver.DEFAULT_BUDGET,
) -> StateStream:
    return StateStream(worklist, strategy, prune, solver_budget)


def display(item: Optional[SymState]) -> Status:
    if item is None:
        return FINISHED
    if is_stuck_sym(item):
        return BugFound(item)
    return PENDING


def find_bugs(
    p: Stmt,
    strategy: Strategy = Strategy.BFS,
    prune: bool = False,
    precondition: Bexpr = TRUE,
    solver_budget: int = solver.DEFAULT_BUDGET,
) -> Iterator[Status]:
    """Status stream of the bug finder started from ``<precondition, id, p>``."""
    return map(display, run([initial_state(p, precondition)], strategy, prune, solver_budget))


# ---------------------------------------------------------------------------
# Budgeted yes/no oracle

class ReplayMismatch(AssertionError):
    """A confirmed symbolic bug failed to reproduce concretely."""


@dataclass(frozen=True)
class Yes:
    state: SymState
    model: Env


@dataclass(frozen=True)
class No:
    pass


@dataclass(frozen=True)
class Unknown:
    reason: str


Answer = Union[Yes, No, Unknown]


def replay(p: Stmt, state: SymState, model: Env, fuel: int) -> ConcState:
    """Run ``p`` on ``model`` and check it gets stuck exactly in ``state``.

    Returns the stuck concrete state; raises ReplayMismatch otherwise.
    """
    outcome = exec_(ConcState(model, p), fuel)
    if not isinstance(outcome, StuckAt):
        raise ReplayMismatch(f"input {model} does not get stuck: {outcome}")
    if not simulates(outcome.state, model, state):
        raise ReplayMismatch(f"input {model} gets stuck in a different state")
    return outcome.state


def confirm(p: Stmt, state: SymState, fuel: int, solver_budget: int) -> solver.SatResult:
    """Solve the path condition of a bug state; replay any model found."""
    res = solver.is_sat(state.path, solver_budget)
    if isinstance(res, solver.Sat):
        replay(p, state, res.model, fuel)
    return res


def has_bug(
    p: Stmt,
    step_budget: int,
    solver_budget: int = solver.DEFAULT_BUDGET,
    strategy: Strategy = Strategy.BFS,
    prune: bool = False,
    precondition: Bexpr = TRUE,
) -> Answer:
    saw_unknown = False
    statuses = find_bugs(p, strategy, prune, precondition, solver_budget)
    for _, status in zip(range(step_budget), statuses):
        if isinstance(status, Finished):
            return Unknown("solver") if saw_unknown else No()
        if isinstance(status, BugFound):
            res = confirm(p, status.state, step_budget, solver_budget)
            if isinstance(res, solver.Sat):
                return Yes(status.state, res.model)
            if isinstance(res, solver.Unknown):
                saw_unknown = True
    return Unknown("step budget exhausted")
