import pytest
from hypothesis import given, settings

from strategies import bexprs, stmts
from wise.concrete import Env, eval_aexpr
from wise.syntax import (
    Add, And, Assign, Cmp, If, IntLit, Not, Or, ParseError, Seq, Sub, Var,
    FAIL, FALSE, SKIP, TRUE, parse_bexpr, parse_program, pretty,
    pretty_bexpr, tokenize,
)

BRANCH = "if x < 0 then fail else x = x - 1 fi"
BRANCH_AST = If(Cmp("<", Var("x"), IntLit(0)), FAIL, Assign("x", Sub(Var("x"), IntLit(1))))


def test_parse_skip():
    assert parse_program("skip") == SKIP


def test_parse_branching_conditional():
    assert parse_program(BRANCH) == BRANCH_AST


def test_subtraction_is_left_associative():
    ast = parse_program("x = 1 - 2 - 3")
    assert ast == Assign("x", Sub(Sub(IntLit(1), IntLit(2)), IntLit(3)))
    assert eval_aexpr(ast.rhs, Env()) == -4


def test_pretty_basic():
    assert pretty(SKIP) == "skip"
    assert pretty(Seq(SKIP, FAIL)) == "skip ; fail"
    assert parse_program(pretty(BRANCH_AST)) == BRANCH_AST


def test_seq_is_right_associative():
    assert parse_program("skip ; fail ; skip") == Seq(SKIP, Seq(FAIL, SKIP))
    left = Seq(Seq(SKIP, FAIL), SKIP)
    assert parse_program(pretty(left)) == left


@pytest.mark.parametrize("text, expected", [
    ("not x < 1 and y > 2 or true",
     Or(And(Not(Cmp("<", Var("x"), IntLit(1))), Cmp(">", Var("y"), IntLit(2))), TRUE)),
    ("a or b == 1 and false",
     None),
    ("(x + 1) < 3", Cmp("<", Add(Var("x"), IntLit(1)), IntLit(3))),
    ("(x < 3)", Cmp("<", Var("x"), IntLit(3))),
    ("not (x == 1 or false)", Not(Or(Cmp("==", Var("x"), IntLit(1)), FALSE))),
    ("x - (y - 1) >= -2", Cmp(">=", Sub(Var("x"), Sub(Var("y"), IntLit(1))), Sub(IntLit(0), IntLit(2)))),
])
def test_boolean_precedence(text, expected):
    if expected is None:
        with pytest.raises(ParseError):
            parse_bexpr(text)
    else:
        assert parse_bexpr(text) == expected


def test_comments_and_positions():
    src = "# leading comment\nx = 1 ; # trailing\n  y = x"
    assert parse_program(src) == Seq(Assign("x", IntLit(1)), Assign("y", Var("x")))
    tokens = tokenize(src)
    y = next(t for t in tokens if t.text == "y")
    assert (y.line, y.column) == (3, 3)


@pytest.mark.parametrize("text, line, column", [
    ("x = 1 <", 1, 7),
    ("if = 3", 1, 1),
    ("x = 1 ;\nwhile x < 1 < 2 do skip od", 2, 13),
    ("x = 1 * 2", 1, 7),
    ("while true do skip", 1, 19),
    ("skip = 1", 1, 1),
    ("x = fi", 1, 5),
])
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_program(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_unary_minus_is_sugar():
    assert parse_program("x = -5") == Assign("x", Sub(IntLit(0), IntLit(5)))


def test_big_integers():
    n = 10 ** 40
    assert parse_program(f"x = {n}") == Assign("x", IntLit(n))


def test_every_production_round_trips():
    src = (
        "while not (x == 1) and y <= 2 or x >= 3 do "
        "if x > y then x = x - y else y = y + 1 fi ; fail od ; "
        "if true then skip else (skip ; skip) ; fail fi ; z = 0 - (1 + x) ; "
        "while false or x < 0 do skip od"
    )
    ast = parse_program(src)
    assert parse_program(pretty(ast)) == ast


@settings(max_examples=400, deadline=None)
@given(stmts(6))
def test_round_trip(s):
    assert parse_program(pretty(s)) == s


@settings(max_examples=200, deadline=None)
@given(bexprs(5))
def test_bexpr_round_trip(b):
    assert parse_bexpr(pretty_bexpr(b)) == b


@settings(max_examples=100, deadline=None)
@given(stmts(4))
def test_parse_is_deterministic(s):
    text = pretty(s)
    assert parse_program(text) == parse_program(text)


def test_deep_left_conjunction_prints_flat():
    b = TRUE
    for i in range(2000):
        b = And(b, Cmp("<", Var("x"), IntLit(i)))
    text = pretty_bexpr(b)
    assert text.startswith("true and x < 0 and x < 1")
    assert "(" not in text
