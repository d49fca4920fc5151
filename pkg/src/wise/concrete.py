"""Concrete small-step semantics of IMP and the concrete bug predicates."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .syntax import (
    Add, And, Assign, Aexpr, BFalse, Bexpr, BTrue, Cmp, If, IntLit, Not,
    Or, Seq, Skip, Stmt, Sub, Var, While, SKIP,
)


class Env:
    """Total map from variable names to integers; unbound names read as 0.

    Equality is extensional: ``Env({"x": 0}) == Env()``.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        self._values = dict(values)

    def __getitem__(self, name: str) -> int:
        return self._values.get(name, 0)

    def set(self, name: str, value: int) -> "Env":
        values = dict(self._values)
        values[name] = value
        return Env(values)

    def bound(self) -> set[str]:
        return set(self._values)

    def items(self):
        return self._values.items()

    def as_dict(self) -> dict[str, int]:
        return dict(self._values)

    def _key(self):
        return frozenset((k, v) for k, v in self._values.items() if v != 0)

    def __eq__(self, other):
        if not isinstance(other, Env):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self._values.items()))
        return f"Env({inner})"


@dataclass(frozen=True)
class ConcState:
    env: Env
    pc: Stmt


@dataclass(frozen=True)
class Terminated:
    env: Env


@dataclass(frozen=True)
class StuckAt:
    state: ConcState


@dataclass(frozen=True)
class OutOfFuel:
    state: ConcState


ExecOutcome = Union[Terminated, StuckAt, OutOfFuel]


class Verdict(enum.Enum):
    YES = "YES"
    NO_TERMINATED = "NO_TERMINATED"
    UNKNOWN = "UNKNOWN"


def eval_aexpr(e: Aexpr, v: Env) -> int:
    if isinstance(e, IntLit):
        return e.value
    if isinstance(e, Var):
        return v[e.name]
    # Symbolic stores build DAGs with shared subterms; memoise per node so
    # evaluation stays linear in the DAG size rather than the tree size.
    memo: dict[int, int] = {}
    stack = [(e, False)]
    while stack:
        node, ready = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if isinstance(node, IntLit):
            memo[key] = node.value
        elif isinstance(node, Var):
            memo[key] = v[node.name]
        elif isinstance(node, (Add, Sub)):
            if not ready:
                stack.append((node, True))
                stack.append((node.left, False))
                stack.append((node.right, False))
                continue
            a, b = memo[id(node.left)], memo[id(node.right)]
            memo[key] = a + b if isinstance(node, Add) else a - b
        else:
            raise TypeError(f"not an arithmetic expression: {node!r}")
    return memo[id(e)]


def compare(op: str, a: int, b: int) -> bool:
    if op == "==":
        return a == b
    if op == "<=":
        return a <= b
    if op == "<":
        return a < b
    if op == ">=":
        return a >= b
    if op == ">":
        return a > b
    raise ValueError(op)


def eval_bexpr(b: Bexpr, v: Env) -> bool:
    # Path conditions are long left-leaning conjunctions; walk that spine
    # without recursing.
    while isinstance(b, And):
        if not eval_bexpr(b.right, v):
            return False
        b = b.left
    if isinstance(b, BTrue):
        return True
    if isinstance(b, BFalse):
        return False
    if isinstance(b, Cmp):
        return compare(b.op, eval_aexpr(b.left, v), eval_aexpr(b.right, v))
    if isinstance(b, Not):
        return not eval_bexpr(b.arg, v)
    if isinstance(b, Or):
        return eval_bexpr(b.left, v) or eval_bexpr(b.right, v)
    raise TypeError(f"not a boolean expression: {b!r}")


def step(s: ConcState) -> Optional[ConcState]:
    """The unique successor of ``s``, or ``None`` when no rule applies."""
    env, pc = s.env, s.pc
    if isinstance(pc, Assign):
        return ConcState(env.set(pc.var, eval_aexpr(pc.rhs, env)), SKIP)
    if isinstance(pc, If):
        return ConcState(env, pc.then if eval_bexpr(pc.cond, env) else pc.else_)
    if isinstance(pc, While):
        if eval_bexpr(pc.cond, env):
            return ConcState(env, Seq(pc.body, pc))
        return ConcState(env, SKIP)
    if isinstance(pc, Seq):
        if isinstance(pc.first, Skip):
            return ConcState(env, pc.second)
        nxt = step(ConcState(env, pc.first))
        if nxt is None:
            return None
        return ConcState(nxt.env, Seq(nxt.pc, pc.second))
    return None


def progress(s: ConcState) -> bool:
    return isinstance(s.pc, Skip) or step(s) is not None


def is_stuck_concrete(s: ConcState) -> bool:
    return not progress(s)


def trace(s: ConcState, fuel: int) -> Iterator[ConcState]:
    """Yield ``s`` and its successors, at most ``fuel`` steps deep."""
    yield s
    for _ in range(fuel):
        nxt = step(s)
        if nxt is None:
            return
        s = nxt
        yield s


def exec_(s: ConcState, fuel: int) -> ExecOutcome:
    """Run ``s`` for at most ``fuel`` small steps."""
    for _ in range(fuel):
        if isinstance(s.pc, Skip):
            return Terminated(s.env)
        nxt = step(s)
        if nxt is None:
            return StuckAt(s)
        s = nxt
    if isinstance(s.pc, Skip):
        return Terminated(s.env)
    if step(s) is None:
        return StuckAt(s)
    return OutOfFuel(s)


def bad_input(p: Stmt, v0: Env, fuel: int) -> Verdict:
    outcome = exec_(ConcState(v0, p), fuel)
    if isinstance(outcome, StuckAt):
        return Verdict.YES
    if isinstance(outcome, Terminated):
        return Verdict.NO_TERMINATED
    return Verdict.UNKNOWN


exec = exec_  # noqa: A001
