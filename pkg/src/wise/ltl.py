"""Three-valued checking of a small LTL fragment on finite stream prefixes.

A verdict is ``SATISFIED`` or ``VIOLATED`` only when every infinite
continuation of the prefix agrees; otherwise it is ``UNDETERMINED``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable, Sequence, Union


class Verdict(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNDETERMINED = "undetermined"


S, V, U = Verdict.SATISFIED, Verdict.VIOLATED, Verdict.UNDETERMINED


class EmptyPrefix(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    predicate: Callable[[Any], bool]
    name: str = "atom"


@dataclass(frozen=True)
class Globally:
    arg: "TraceFormula"


@dataclass(frozen=True)
class Eventually:
    arg: "TraceFormula"


@dataclass(frozen=True)
class Implies:
    left: "TraceFormula"
    right: "TraceFormula"


TraceFormula = Union[Atom, Globally, Eventually, Implies]


def _implies(a: Verdict, b: Verdict) -> Verdict:
    if a is V or b is S:
        return S
    if a is S:
        return b
    return U


def _verdicts(prefix: Sequence, f: TraceFormula) -> list[Verdict]:
    """Verdict of ``f`` on every suffix of ``prefix``."""
    if isinstance(f, Atom):
        return [S if f.predicate(x) else V for x in prefix]
    if isinstance(f, Implies):
        return [_implies(a, b) for a, b in zip(_verdicts(prefix, f.left), _verdicts(prefix, f.right))]
    inner = _verdicts(prefix, f.arg)
    out = [U] * len(inner)
    # Scan from the end: a suffix inherits a decisive verdict from any later
    # position.
    if isinstance(f, Eventually):
        acc = U
        for i in range(len(inner) - 1, -1, -1):
            if inner[i] is S:
                acc = S
            out[i] = acc
        return out
    if isinstance(f, Globally):
        acc = U
        for i in range(len(inner) - 1, -1, -1):
            if inner[i] is V:
                acc = V
            out[i] = acc
        return out
    raise TypeError(f"not a trace formula: {f!r}")


def check(prefix: Sequence, f: TraceFormula) -> Verdict:
    prefix = list(prefix)
    if not prefix:
        raise EmptyPrefix("cannot check a formula on an empty prefix")
    return _verdicts(prefix, f)[0]


def always(pred: Callable[[Any], bool], name: str = "atom") -> Globally:
    return Globally(Atom(pred, name))


def eventually(pred: Callable[[Any], bool], name: str = "atom") -> Eventually:
    return Eventually(Atom(pred, name))


def stays(pred: Callable[[Any], bool], name: str = "atom") -> Globally:
    """``G(pred -> G pred)``: once ``pred`` holds it holds forever."""
    a = Atom(pred, name)
    return Globally(Implies(a, Globally(a)))
