"""Hypothesis strategies for IMP syntax trees (depth-bounded)."""

from hypothesis import strategies as st

from wise.concrete import Env
from wise.syntax import (
    Add, And, Assign, CMP_OPS, Cmp, If, IntLit, Not, Or, Seq, Sub, Var, While,
    FAIL, FALSE, SKIP, TRUE,
)

NAMES = st.sampled_from(["x", "y", "z"])


def aexprs(depth: int, lits=st.integers(0, 8)):
    leaf = st.one_of(lits.map(IntLit), NAMES.map(Var))
    if depth <= 0:
        return leaf
    sub = aexprs(depth - 1, lits)
    return st.one_of(leaf, st.builds(Add, sub, sub), st.builds(Sub, sub, sub))


def bexprs(depth: int, lits=st.integers(0, 8)):
    cmp = st.builds(Cmp, st.sampled_from(CMP_OPS), aexprs(min(depth, 2), lits), aexprs(min(depth, 2), lits))
    leaf = st.one_of(st.just(TRUE), st.just(FALSE), cmp)
    if depth <= 0:
        return leaf
    sub = bexprs(depth - 1, lits)
    return st.one_of(leaf, st.builds(Not, sub), st.builds(And, sub, sub), st.builds(Or, sub, sub))


def stmts(depth: int):
    leaf = st.one_of(st.just(SKIP), st.just(FAIL), st.builds(Assign, NAMES, aexprs(2)))
    if depth <= 0:
        return leaf
    sub = stmts(depth - 1)
    return st.one_of(
        leaf,
        st.builds(Seq, sub, sub),
        st.builds(While, bexprs(2), sub),
        st.builds(If, bexprs(2), sub, sub),
    )


envs = st.fixed_dictionaries(
    {"x": st.integers(-8, 8), "y": st.integers(-8, 8), "z": st.integers(-8, 8)}
).map(Env)
