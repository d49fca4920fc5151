"""Satisfiability of IMP path conditions over the integers.

Path conditions are quantifier-free boolean combinations of linear
comparisons (arithmetic has only ``+`` and ``-``).  ``is_sat`` puts a
condition in disjunctive normal form and decides each conjunction with an
Omega-test style elimination core: exact equality elimination, exact
Fourier-Motzkin steps when a variable has unit coefficients on one side, and
the real/dark shadow split with splintering otherwise.  Every ``Sat`` answer
carries a model that has been re-checked against the original condition.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .concrete import Env, eval_bexpr
from .syntax import (
    Add, And, Aexpr, BFalse, Bexpr, BTrue, Cmp, IntLit, Not, Or, Sub, Var,
    bexpr_vars,
)

DNF_CAP = 4096
DEFAULT_BUDGET = 100_000


class DnfBlowup(Exception):
    pass


class _Exhausted(Exception):
    pass


# ---------------------------------------------------------------------------
# Results

@dataclass(frozen=True)
class Sat:
    model: Env


@dataclass(frozen=True)
class Unsat:
    pass


@dataclass(frozen=True)
class Unknown:
    reason: str  # "budget-exhausted" | "dnf-blowup"


SatResult = Union[Sat, Unsat, Unknown]


# ---------------------------------------------------------------------------
# Linear constraints

REL_NEGATION = {"=": "!=", "!=": "=", "<=": ">", ">": "<=", "<": ">=", ">=": "<"}
_CMP_REL = {"==": "="}


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coeffs[v] * v) + constant  <relation>  0``."""

    coeffs: tuple[tuple[str, int], ...]
    constant: int
    relation: str  # one of =, !=, <=, <, >=, >

    @classmethod
    def make(cls, coeffs: dict[str, int], constant: int, relation: str) -> "LinearConstraint":
        items = tuple(sorted((v, a) for v, a in coeffs.items() if a != 0))
        return cls(items, constant, relation)

    def value(self, env: Env) -> int:
        return sum(a * env[v] for v, a in self.coeffs) + self.constant

    def holds(self, env: Env) -> bool:
        x = self.value(env)
        return {
            "=": x == 0, "!=": x != 0, "<=": x <= 0,
            "<": x < 0, ">=": x >= 0, ">": x > 0,
        }[self.relation]

    def negated(self) -> "LinearConstraint":
        return LinearConstraint(self.coeffs, self.constant, REL_NEGATION[self.relation])

    def normal(self) -> "LinearConstraint":
        """Rewrite into ``<=``, ``=`` or ``!=`` using integer tightening."""
        neg = tuple((v, -a) for v, a in self.coeffs)
        if self.relation in ("<=", "=", "!="):
            return self
        if self.relation == "<":
            return LinearConstraint(self.coeffs, self.constant + 1, "<=")
        if self.relation == ">=":
            return LinearConstraint(neg, -self.constant, "<=")
        return LinearConstraint(neg, 1 - self.constant, "<=")  # ">"

    def __str__(self):
        terms = " + ".join(f"{a}*{v}" for v, a in self.coeffs) or "0"
        return f"{terms} + {self.constant} {self.relation} 0"


def linearize(e: Aexpr) -> tuple[dict[str, int], int]:
    """Coefficient map and constant of ``e``.

    Symbolic stores share subterms (``f = f + f`` doubles a tree while the
    DAG grows by one node), so results are memoised per node identity.
    """
    memo: dict[int, tuple[dict[str, int], int]] = {}
    stack = [(e, False)]
    while stack:
        node, ready = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if isinstance(node, IntLit):
            memo[key] = ({}, node.value)
        elif isinstance(node, Var):
            memo[key] = ({node.name: 1}, 0)
        elif isinstance(node, (Add, Sub)):
            if not ready:
                stack.append((node, True))
                stack.append((node.left, False))
                stack.append((node.right, False))
                continue
            lc, lk = memo[id(node.left)]
            rc, rk = memo[id(node.right)]
            sign = 1 if isinstance(node, Add) else -1
            coeffs = dict(lc)
            for v, a in rc.items():
                coeffs[v] = coeffs.get(v, 0) + sign * a
            memo[key] = (coeffs, lk + sign * rk)
        else:
            raise TypeError(f"not an arithmetic expression: {node!r}")
    coeffs, const = memo[id(e)]
    return dict(coeffs), const


def _literal(b: Cmp, positive: bool) -> LinearConstraint:
    lc, lk = linearize(b.left)
    rc, rk = linearize(b.right)
    for v, a in rc.items():
        lc[v] = lc.get(v, 0) - a
    rel = _CMP_REL.get(b.op, b.op)
    c = LinearConstraint.make(lc, lk - rk, rel)
    return c if positive else c.negated()


# ---------------------------------------------------------------------------
# Normal form

Clause = list[LinearConstraint]


def _product(left: list[Clause], right: list[Clause], cap: int) -> list[Clause]:
    if len(left) * len(right) > cap:
        raise DnfBlowup(f"more than {cap} clauses")
    return [a + b for a in left for b in right]


def _dnf(b: Bexpr, positive: bool, cap: int, split_diseq: bool) -> list[Clause]:
    # A conjunction (or negated disjunction) becomes a product; flatten the
    # chain first so long path conditions do not recurse.
    if (isinstance(b, And) and positive) or (isinstance(b, Or) and not positive):
        kind = type(b)
        parts = []
        stack = [b]
        while stack:
            node = stack.pop()
            if type(node) is kind:
                stack.append(node.left)
                stack.append(node.right)
            else:
                parts.append(node)
        result: list[Clause] = [[]]
        for part in parts:
            result = _product(result, _dnf(part, positive, cap, split_diseq), cap)
            if not result:
                return []
        return result
    if isinstance(b, (And, Or)):
        out = _dnf(b.left, positive, cap, split_diseq) + _dnf(b.right, positive, cap, split_diseq)
        if len(out) > cap:
            raise DnfBlowup(f"more than {cap} clauses")
        return out
    if isinstance(b, Not):
        return _dnf(b.arg, not positive, cap, split_diseq)
    if isinstance(b, BTrue):
        return [[]] if positive else []
    if isinstance(b, BFalse):
        return [] if positive else [[]]
    if isinstance(b, Cmp):
        lit = _literal(b, positive)
        if not lit.coeffs:
            return [[]] if lit.holds(Env()) else []
        if lit.relation == "!=" and split_diseq:
            return [
                [LinearConstraint(lit.coeffs, lit.constant, "<").normal()],
                [LinearConstraint(lit.coeffs, lit.constant, ">").normal()],
            ]
        return [[lit.normal()]]
    raise TypeError(f"not a boolean expression: {b!r}")


def normalize(phi: Bexpr, cap: int = DNF_CAP, split_diseq: bool = True) -> list[Clause]:
    """DNF of ``phi`` as a list of clauses of normal-form constraints.

    The empty list is ``false``; a clause with no constraints is ``true``.
    With ``split_diseq`` a disequality becomes two strict disjuncts; otherwise
    it is kept as a ``!=`` literal for the clause solver to split lazily.
    Raises DnfBlowup past ``cap`` clauses.
    """
    return _dnf(phi, True, cap, split_diseq)


# ---------------------------------------------------------------------------
# Elimination core

Lin = dict[str, int]  # coefficient map; the constant lives alongside


class _Budget:
    def __init__(self, steps: int):
        self.left = steps

    def spend(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise _Exhausted


@dataclass
class _Fresh:
    n: int = 0
    names: set = field(default_factory=set)

    def __call__(self) -> str:
        self.n += 1
        name = f"%sigma{self.n}"
        self.names.add(name)
        return name


def _floor_div(a: int, b: int) -> int:
    return a // b if b > 0 else (-a) // (-b)


def _ceil_div(a: int, b: int) -> int:
    return -_floor_div(-a, b)


def _gcd_all(coeffs: Lin) -> int:
    g = 0
    for a in coeffs.values():
        g = math.gcd(g, a)
    return g


def _substitute(coeffs: Lin, const: int, var: str, by: Lin, by_const: int) -> tuple[Lin, int]:
    a = coeffs.get(var, 0)
    if a == 0:
        return coeffs, const
    out = dict(coeffs)
    del out[var]
    for v, b in by.items():
        out[v] = out.get(v, 0) + a * b
    return out, const + a * by_const


def _eval(coeffs: Lin, const: int, model: dict[str, int]) -> int:
    return sum(a * model.get(v, 0) for v, a in coeffs.items()) + const


def _mod_hat(a: int, m: int) -> int:
    return a - m * ((2 * a + m) // (2 * m))


def _omega(eqs, les, budget: _Budget, fresh: _Fresh) -> Optional[dict[str, int]]:
    """Integer model of ``eqs`` (each ``= 0``) and ``les`` (each ``<= 0``), or None."""
    budget.spend()

    norm_eqs = []
    for co, c in eqs:
        co = {v: a for v, a in co.items() if a}
        if not co:
            if c != 0:
                return None
            continue
        g = _gcd_all(co)
        if c % g:
            return None
        norm_eqs.append(({v: a // g for v, a in co.items()}, c // g))

    tightest: dict[tuple, int] = {}
    for co, c in les:
        co = {v: a for v, a in co.items() if a}
        if not co:
            if c > 0:
                return None
            continue
        g = _gcd_all(co)
        key = tuple(sorted((v, a // g) for v, a in co.items()))
        c = _ceil_div(c, g)
        if key not in tightest or c > tightest[key]:
            tightest[key] = c

    # Opposite pairs either contradict or pin down an equality.
    for key, c in list(tightest.items()):
        if key not in tightest:
            continue
        neg = tuple((v, -a) for v, a in key)
        if neg in tightest:
            c2 = tightest[neg]
            if c + c2 > 0:
                return None
            if c + c2 == 0:
                del tightest[key], tightest[neg]
                norm_eqs.append((dict(key), c))

    norm_les = [(dict(k), c) for k, c in tightest.items()]

    if norm_eqs:
        return _eliminate_equality(norm_eqs, norm_les, budget, fresh)
    if not norm_les:
        return {}
    return _eliminate_inequality(norm_les, budget, fresh)


def _eliminate_equality(eqs, les, budget, fresh):
    idx = min(range(len(eqs)), key=lambda i: min(abs(a) for a in eqs[i][0].values()))
    co, c = eqs[idx]
    others = eqs[:idx] + eqs[idx + 1:]
    var = min(co, key=lambda v: (abs(co[v]), v))
    a = co[var]
    if abs(a) == 1:
        # var = -(rest + c) / a
        by = {v: -b * a for v, b in co.items() if v != var}
        by_const = -c * a
        new_eqs = [_substitute(e, k, var, by, by_const) for e, k in others]
        new_les = [_substitute(e, k, var, by, by_const) for e, k in les]
        budget.spend(len(new_eqs) + len(new_les))
        model = _omega(new_eqs, new_les, budget, fresh)
        if model is None:
            return None
        model[var] = _eval(by, by_const, model)
        return model

    # No unit coefficient: introduce sigma with
    #   var = sum_{i != var} mod_hat(a_i, m) x_i + mod_hat(c, m) - m * sigma
    # where m = |a| + 1, which keeps the problem equivalent and shrinks the
    # coefficients of the substituted equality.
    if a < 0:
        co = {v: -b for v, b in co.items()}
        c = -c
        a = -a
    m = a + 1
    sigma = fresh()
    by = {v: _mod_hat(b, m) for v, b in co.items() if v != var}
    by = {v: b for v, b in by.items() if b}
    by[sigma] = -m
    by_const = _mod_hat(c, m)
    new_eqs = [_substitute(co, c, var, by, by_const)]
    new_eqs += [_substitute(e, k, var, by, by_const) for e, k in others]
    new_les = [_substitute(e, k, var, by, by_const) for e, k in les]
    budget.spend(len(new_eqs) + len(new_les))
    model = _omega(new_eqs, new_les, budget, fresh)
    if model is None:
        return None
    model[var] = _eval(by, by_const, model)
    return model


def _bounds(var, les):
    lowers, uppers, rest = [], [], []
    for co, c in les:
        a = co.get(var, 0)
        if a == 0:
            rest.append((co, c))
            continue
        r = {v: b for v, b in co.items() if v != var}
        if a > 0:
            uppers.append((a, r, c))     # a*var + r + c <= 0
        else:
            lowers.append((-a, r, c))    # b*var >= r + c
    return lowers, uppers, rest


def _combine(lower, upper, dark: bool):
    b, rl, cl = lower
    a, ru, cu = upper
    # a*(rl + cl) + b*(ru + cu) (+ (a-1)(b-1) for the dark shadow) <= 0
    co = {v: a * x for v, x in rl.items()}
    for v, x in ru.items():
        co[v] = co.get(v, 0) + b * x
    const = a * cl + b * cu
    if dark:
        const += (a - 1) * (b - 1)
    return co, const


def _pick_value(var, lowers, uppers, model):
    lo = max((_ceil_div(_eval(r, c, model), b) for b, r, c in lowers), default=None)
    hi = min((_floor_div(-_eval(r, c, model), a) for a, r, c in uppers), default=None)
    if lo is not None and hi is not None and lo > hi:
        raise AssertionError(f"empty range for {var}: [{lo}, {hi}]")
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return 0
    return lo if lo is not None and lo > 0 else hi


def _eliminate_inequality(les, budget, fresh):
    variables = sorted({v for co, _ in les for v in co})
    best = None
    for v in variables:
        lowers, uppers, rest = _bounds(v, les)
        exact = (
            not lowers or not uppers
            or all(b == 1 for b, _, _ in lowers)
            or all(a == 1 for a, _, _ in uppers)
        )
        score = (not exact, len(lowers) * len(uppers), v)
        if best is None or score < best[0]:
            best = (score, v, lowers, uppers, rest, exact)
    _, var, lowers, uppers, rest, exact = best

    budget.spend(len(lowers) * len(uppers))
    real = rest + [_combine(lo, up, False) for lo in lowers for up in uppers]
    if exact:
        model = _omega([], real, budget, fresh)
        if model is None:
            return None
        model[var] = _pick_value(var, lowers, uppers, model)
        return model

    if _omega([], real, budget, fresh) is None:
        return None
    dark = rest + [_combine(lo, up, True) for lo in lowers for up in uppers]
    model = _omega([], dark, budget, fresh)
    if model is not None:
        model[var] = _pick_value(var, lowers, uppers, model)
        return model

    # Splinters: any integer solution outside the dark shadow lies close to
    # some lower bound.
    m = max(a for a, _, _ in uppers)
    for b, r, c in lowers:
        for i in range((m * b - m - b) // m + 1):
            eq = dict((v, -x) for v, x in r.items())
            eq[var] = b
            model = _omega([(eq, -c - i)], les, budget, fresh)
            if model is not None:
                return model
    return None


# ---------------------------------------------------------------------------
# Public entry points

def _split(clause: Clause):
    eqs, les, nes = [], [], []
    for lit in clause:
        lit = lit.normal()
        co = dict(lit.coeffs)
        if lit.relation == "=":
            eqs.append((co, lit.constant))
        elif lit.relation == "<=":
            les.append((co, lit.constant))
        else:
            nes.append(lit)
    return eqs, les, nes


def _solve(eqs, les, nes, budget: _Budget) -> Optional[Env]:
    fresh = _Fresh()
    raw = _omega(eqs, les, budget, fresh)
    if raw is None:
        return None
    model = Env({v: x for v, x in raw.items() if v not in fresh.names})
    for i, ne in enumerate(nes):
        if ne.holds(model):
            continue
        # Disequality violated by this model: split it into its two strict
        # halves and solve each.
        rest = nes[:i] + nes[i + 1:]
        for half in ("<", ">"):
            h = LinearConstraint(ne.coeffs, ne.constant, half).normal()
            sub = _solve(eqs, les + [(dict(h.coeffs), h.constant)], rest, budget)
            if sub is not None:
                return sub
        return None
    return model


def _probe(clause: Clause, radius: int = 4) -> Optional[Env]:
    variables = sorted({v for lit in clause for v, _ in lit.coeffs})
    if len(variables) > 3:
        return None
    for values in itertools.product(range(-radius, radius + 1), repeat=len(variables)):
        env = Env(zip(variables, values))
        if all(lit.holds(env) for lit in clause):
            return env
    return None


def solve_clause(clause: Clause, budget: int | _Budget = DEFAULT_BUDGET) -> SatResult:
    """Integer feasibility of a conjunction of linear constraints."""
    if not isinstance(budget, _Budget):
        budget = _Budget(budget)
    eqs, les, nes = _split(clause)
    try:
        model = _solve(eqs, les, nes, budget)
    except _Exhausted:
        found = _probe(clause)
        if found is not None:
            return Sat(found)
        return Unknown("budget-exhausted")
    if model is None:
        return Unsat()
    if not all(lit.holds(model) for lit in clause):
        raise AssertionError(f"solver produced an invalid model {model} for {clause}")
    return Sat(model)


def is_sat(phi: Bexpr, budget: int = DEFAULT_BUDGET, cap: int = DNF_CAP) -> SatResult:
    try:
        clauses = normalize(phi, cap=cap, split_diseq=False)
    except DnfBlowup:
        return Unknown("dnf-blowup")
    shared = _Budget(budget)
    unknown = None
    for clause in clauses:
        res = solve_clause(clause, shared)
        if isinstance(res, Sat):
            if not eval_bexpr(phi, res.model):
                raise AssertionError(f"model {res.model} does not satisfy the query")
            return res
        if isinstance(res, Unknown):
            # Remaining clauses still get the cheap probe once the shared
            # budget is gone.
            unknown = res
    return unknown if unknown is not None else Unsat()


# ---------------------------------------------------------------------------
# SMT-LIB2

_SMT_RESERVED = frozenset(
    """let par _ ! as exists forall match assert check-sat declare-const
    declare-fun define-fun get-model set-logic ite distinct Int Bool Real div
    mod abs to_real to_int is_int BINARY DECIMAL HEXADECIMAL NUMERAL STRING""".split()
)


def _smt_symbol(name: str) -> str:
    return f"|{name}|" if name in _SMT_RESERVED else name


def _smt_aexpr(e: Aexpr) -> str:
    if isinstance(e, IntLit):
        return str(e.value) if e.value >= 0 else f"(- {-e.value})"
    if isinstance(e, Var):
        return _smt_symbol(e.name)
    op = "+" if isinstance(e, Add) else "-"
    return f"({op} {_smt_aexpr(e.left)} {_smt_aexpr(e.right)})"


_SMT_CMP = {"==": "=", "<=": "<=", "<": "<", ">=": ">=", ">": ">"}


def _smt_bexpr(b: Bexpr) -> str:
    if isinstance(b, BTrue):
        return "true"
    if isinstance(b, BFalse):
        return "false"
    if isinstance(b, Cmp):
        return f"({_SMT_CMP[b.op]} {_smt_aexpr(b.left)} {_smt_aexpr(b.right)})"
    if isinstance(b, Not):
        return f"(not {_smt_bexpr(b.arg)})"
    op = "and" if isinstance(b, And) else "or"
    return f"({op} {_smt_bexpr(b.left)} {_smt_bexpr(b.right)})"


def emit_smtlib(phi: Bexpr) -> str:
    lines = ["(set-logic QF_LIA)"]
    lines += [f"(declare-const {_smt_symbol(v)} Int)" for v in sorted(bexpr_vars(phi))]
    lines += [f"(assert {_smt_bexpr(phi)})", "(check-sat)", "(get-model)"]
    return "\n".join(lines) + "\n"
