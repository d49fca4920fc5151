import random

import pytest

from wise.engine import FINISHED, PENDING, BugFound, Finished
from wise.ltl import (
    Atom, EmptyPrefix, Eventually, Globally, Implies, Verdict, always, check,
    eventually, stays,
)
from wise.symbolic import IDENTITY, SymState
from wise.syntax import FAIL, TRUE

S, V, U = Verdict.SATISFIED, Verdict.VIOLATED, Verdict.UNDETERMINED

is_bug = Atom(lambda s: isinstance(s, BugFound), "BugFound")
is_none = Atom(lambda s: s is None, "None")
is_pending = Atom(lambda s: s == PENDING, "Pending")


def test_examples():
    bug = BugFound(SymState(TRUE, IDENTITY, FAIL))
    assert check([PENDING, bug], Eventually(is_bug)) is S
    assert check([None, PENDING], Globally(Implies(is_none, Globally(is_none)))) is V
    assert check([PENDING], Globally(is_pending)) is U


def test_empty_prefix():
    with pytest.raises(EmptyPrefix):
        check([], Eventually(is_bug))


def test_implies_table():
    t, f = Atom(lambda _: True), Atom(lambda _: False)
    undecided = Eventually(f)
    assert check([0], Implies(f, undecided)) is S
    assert check([0], Implies(t, f)) is V
    assert check([0], Implies(t, undecided)) is U
    assert check([0], Implies(undecided, t)) is S
    assert check([0], Implies(undecided, f)) is U


def test_helpers():
    assert check([1, 2, 3], always(lambda n: n > 0)) is U
    assert check([1, -2, 3], always(lambda n: n > 0)) is V
    assert check([1, 2], eventually(lambda n: n == 2)) is S
    assert check([FINISHED, FINISHED], stays(lambda s: isinstance(s, Finished))) is U
    assert check([FINISHED, PENDING], stays(lambda s: isinstance(s, Finished))) is V


def random_formula(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        k = rng.randrange(4)
        return Atom(lambda n, k=k: n % 4 == k, f"mod{k}")
    r = rng.randrange(3)
    if r == 0:
        return Globally(random_formula(rng, depth - 1))
    if r == 1:
        return Eventually(random_formula(rng, depth - 1))
    return Implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1))


def test_monotonicity():
    rng = random.Random(3)
    for _ in range(300):
        f = random_formula(rng, 3)
        prefix = [rng.randrange(8) for _ in range(rng.randint(1, 12))]
        longer = prefix + [rng.randrange(8) for _ in range(rng.randint(1, 12))]
        a, b = check(prefix, f), check(longer, f)
        if a is not U:
            assert b is a


def test_long_prefix_is_linear():
    prefix = [PENDING] * 50_000 + [FINISHED] * 10
    f = Globally(Implies(Atom(lambda s: isinstance(s, Finished)), Globally(Atom(lambda s: isinstance(s, Finished)))))
    assert check(prefix, f) is U
