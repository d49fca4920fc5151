"""Symbolic stores and states, the successor function, and the simulation
relation tying symbolic states to concrete ones."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .concrete import ConcState, Env, eval_aexpr, eval_bexpr
from .syntax import (
    Add, And, Assign, Aexpr, BFalse, Bexpr, BTrue, Cmp, Fail, If, IntLit, Not,
    Or, Seq, Skip, Stmt, Sub, Var, While, SKIP, TRUE, pretty_aexpr,
)


class SymStore:
    """Total map from variables to expressions; unbound names map to themselves."""

    __slots__ = ("_exprs",)

    def __init__(self, exprs: Mapping[str, Aexpr] | Iterable[tuple[str, Aexpr]] = ()):
        self._exprs = dict(exprs)

    def __getitem__(self, name: str) -> Aexpr:
        e = self._exprs.get(name)
        return Var(name) if e is None else e

    def set(self, name: str, e: Aexpr) -> "SymStore":
        exprs = dict(self._exprs)
        exprs[name] = e
        return SymStore(exprs)

    def bound(self) -> set[str]:
        return set(self._exprs)

    def items(self):
        return self._exprs.items()

    def _nontrivial(self) -> dict[str, Aexpr]:
        return {k: e for k, e in self._exprs.items() if e != Var(k)}

    def __eq__(self, other):
        if not isinstance(other, SymStore):
            return NotImplemented
        # Plain dict comparison: element-wise equality short-circuits on
        # shared subterms, whereas hashing expressions would walk the whole
        # tree behind a DAG.
        return self._nontrivial() == other._nontrivial()

    def __hash__(self):
        return hash(frozenset(self._nontrivial()))

    def __repr__(self):
        inner = ", ".join(f"{k}:={pretty_aexpr(e)}" for k, e in sorted(self._exprs.items()))
        return f"SymStore({inner})"


IDENTITY = SymStore()


@dataclass(frozen=True)
class SymState:
    path: Bexpr
    store: SymStore
    pc: Stmt


def initial_state(p: Stmt, path: Bexpr = TRUE) -> SymState:
    return SymState(path, IDENTITY, p)


def sym_eval_aexpr(e: Aexpr, s: SymStore) -> Aexpr:
    if isinstance(e, IntLit):
        return e
    if isinstance(e, Var):
        return s[e.name]
    if isinstance(e, Add):
        return Add(sym_eval_aexpr(e.left, s), sym_eval_aexpr(e.right, s))
    if isinstance(e, Sub):
        return Sub(sym_eval_aexpr(e.left, s), sym_eval_aexpr(e.right, s))
    raise TypeError(f"not an arithmetic expression: {e!r}")


def sym_eval_bexpr(b: Bexpr, s: SymStore) -> Bexpr:
    if isinstance(b, (BTrue, BFalse)):
        return b
    if isinstance(b, Cmp):
        return Cmp(b.op, sym_eval_aexpr(b.left, s), sym_eval_aexpr(b.right, s))
    if isinstance(b, Not):
        return Not(sym_eval_bexpr(b.arg, s))
    if isinstance(b, And):
        return And(sym_eval_bexpr(b.left, s), sym_eval_bexpr(b.right, s))
    if isinstance(b, Or):
        return Or(sym_eval_bexpr(b.left, s), sym_eval_bexpr(b.right, s))
    raise TypeError(f"not a boolean expression: {b!r}")


def expand(state: SymState) -> list[SymState]:
    """All symbolic successors of ``state``.

    Branch conditions are conjoined onto the path condition as-is; nothing is
    simplified here.
    """
    path, store, pc = state.path, state.store, state.pc
    if isinstance(pc, (Skip, Fail)):
        return []
    if isinstance(pc, Seq):
        if isinstance(pc.first, Skip):
            return [SymState(path, store, pc.second)]
        return [
            SymState(nxt.path, nxt.store, Seq(nxt.pc, pc.second))
            for nxt in expand(SymState(path, store, pc.first))
        ]
    if isinstance(pc, Assign):
        return [SymState(path, store.set(pc.var, sym_eval_aexpr(pc.rhs, store)), SKIP)]
    if isinstance(pc, While):
        cond = sym_eval_bexpr(pc.cond, store)
        return [
            SymState(And(path, cond), store, Seq(pc.body, pc)),
            SymState(And(path, Not(cond)), store, SKIP),
        ]
    if isinstance(pc, If):
        cond = sym_eval_bexpr(pc.cond, store)
        return [
            SymState(And(path, cond), store, pc.then),
            SymState(And(path, Not(cond)), store, pc.else_),
        ]
    raise TypeError(f"not a statement: {pc!r}")


def concretize(v0: Env, s: SymStore) -> Env:
    """The environment ``x -> [[S(x)]]_V0``."""
    values = v0.as_dict()
    for name, e in s.items():
        values[name] = eval_aexpr(e, v0)
    return Env(values)


def simulates(c: ConcState, v0: Env, s: SymState) -> bool:
    return (
        c.pc == s.pc
        and c.env == concretize(v0, s.store)
        and eval_bexpr(s.path, v0)
    )


def is_stuck_sym(s: SymState) -> bool:
    pc = s.pc
    while isinstance(pc, Seq):
        pc = pc.first
    return isinstance(pc, Fail)
