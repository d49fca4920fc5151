from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import aexprs, bexprs, envs, stmts
from wise.concrete import (
    ConcState, Env, OutOfFuel, StuckAt, Terminated, Verdict, bad_input,
    eval_aexpr, eval_bexpr, exec_, is_stuck_concrete, progress, step,
)
from wise.syntax import (
    Add, Assign, Cmp, Fail, IntLit, Seq, Skip, Sub, Var, While, FAIL, FALSE, SKIP, TRUE, parse_program,
)

BRANCH = parse_program("if x < 0 then fail else x = x - 1 fi")


# Naive oracles, written independently of the evaluator under test.

def oracle_a(e, v):
    kind = type(e).__name__
    if kind == "IntLit":
        return e.value
    if kind == "Var":
        return v.as_dict().get(e.name, 0)
    l, r = oracle_a(e.left, v), oracle_a(e.right, v)
    return l + r if kind == "Add" else l - r


def oracle_b(b, v):
    kind = type(b).__name__
    if kind in ("BTrue", "BFalse"):
        return kind == "BTrue"
    if kind == "Not":
        return not oracle_b(b.arg, v)
    if kind == "And":
        return oracle_b(b.left, v) and oracle_b(b.right, v)
    if kind == "Or":
        return oracle_b(b.left, v) or oracle_b(b.right, v)
    l, r = oracle_a(b.left, v), oracle_a(b.right, v)
    return {"==": l == r, "<=": l <= r, "<": l < r, ">=": l >= r, ">": l > r}[b.op]


def leftmost(p):
    while isinstance(p, Seq):
        p = p.first
    return p


def test_eval_examples():
    assert eval_aexpr(Add(Var("x"), IntLit(1)), Env({"x": 2})) == 3
    assert eval_aexpr(Sub(Var("x"), Var("y")), Env()) == 0
    assert eval_bexpr(TRUE, Env({"x": 4}))
    assert eval_bexpr(Cmp("<", Var("x"), IntLit(0)), Env({"x": -1}))


@settings(max_examples=300, deadline=None)
@given(aexprs(5, st.integers(-20, 20)), envs)
def test_eval_aexpr_matches_oracle(e, v):
    assert eval_aexpr(e, v) == oracle_a(e, v)


@settings(max_examples=300, deadline=None)
@given(bexprs(5, st.integers(-20, 20)), envs)
def test_eval_bexpr_matches_oracle(b, v):
    assert eval_bexpr(b, v) == oracle_b(b, v)


def test_eval_shared_subterms():
    e = Var("x")
    for _ in range(100):
        e = Add(e, e)
    assert eval_aexpr(e, Env({"x": 3})) == 3 * 2 ** 100


def test_env_defaults_and_equality():
    v = Env({"x": 3})
    assert v["y"] == 0
    assert v.set("y", 5)["y"] == 5
    assert v["y"] == 0
    assert Env({"x": 0}) == Env()
    assert hash(Env({"x": 0, "y": 2})) == hash(Env({"y": 2}))


def test_step_examples():
    assert step(ConcState(Env({"x": 3}), parse_program("x = x - 1"))) == ConcState(Env({"x": 2}), SKIP)
    assert step(ConcState(Env(), SKIP)) is None
    loop = While(FALSE, Assign("x", IntLit(1)))
    assert step(ConcState(Env(), loop)) == ConcState(Env(), SKIP)
    body = Assign("x", IntLit(1))
    assert step(ConcState(Env(), While(TRUE, body))) == ConcState(Env(), Seq(body, While(TRUE, body)))
    assert step(ConcState(Env(), Seq(SKIP, FAIL))) == ConcState(Env(), FAIL)
    assert step(ConcState(Env(), Seq(Assign("x", IntLit(7)), FAIL))) == ConcState(Env({"x": 7}), Seq(SKIP, FAIL))


def test_exec_examples():
    assert exec_(ConcState(Env(), SKIP), 0) == Terminated(Env())
    assert exec_(ConcState(Env({"x": -1}), BRANCH), 10) == StuckAt(ConcState(Env({"x": -1}), FAIL))
    out = exec_(ConcState(Env(), While(TRUE, SKIP)), 100)
    assert isinstance(out, OutOfFuel)


def test_progress_and_stuck():
    v = Env({"x": 1})
    assert progress(ConcState(v, SKIP))
    assert not progress(ConcState(v, FAIL))
    assert not progress(ConcState(v, Seq(FAIL, SKIP)))
    assert is_stuck_concrete(ConcState(v, FAIL))
    assert not is_stuck_concrete(ConcState(v, SKIP))
    assert not is_stuck_concrete(ConcState(v, Assign("x", IntLit(0))))


def test_bad_input_examples():
    assert bad_input(BRANCH, Env({"x": -5}), 10) is Verdict.YES
    assert bad_input(BRANCH, Env({"x": 0}), 10) is Verdict.NO_TERMINATED
    assert bad_input(While(TRUE, SKIP), Env(), 50) is Verdict.UNKNOWN


@settings(max_examples=300, deadline=None)
@given(stmts(5), envs)
def test_step_is_deterministic(p, v):
    s = ConcState(v, p)
    assert step(s) == step(s)


@settings(max_examples=300, deadline=None)
@given(stmts(5), envs)
def test_stuck_iff_leftmost_fail(p, v):
    assert is_stuck_concrete(ConcState(v, p)) == isinstance(leftmost(p), Fail)


@settings(max_examples=200, deadline=None)
@given(stmts(4), envs, st.integers(0, 40), st.integers(0, 40))
def test_fuel_monotonicity(p, v, n, extra):
    out = exec_(ConcState(v, p), n)
    if isinstance(out, (Terminated, StuckAt)):
        assert exec_(ConcState(v, p), n + extra) == out


@settings(max_examples=200, deadline=None)
@given(stmts(4), envs)
def test_exec_outcome_invariants(p, v):
    out = exec_(ConcState(v, p), 60)
    if isinstance(out, StuckAt):
        assert is_stuck_concrete(out.state)
    if isinstance(out, OutOfFuel):
        assert progress(out.state) and not isinstance(out.state.pc, Skip)
