"""Case-study programs with seeded single-edit mutants, and a differential
harness comparing the bug finder against exhaustive concrete execution."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping, Optional, Union

from ..concrete import ConcState, Env, OutOfFuel, StuckAt, eval_bexpr, exec_
from ..engine import BugFound, Finished, Strategy, find_bugs
from ..symbolic import simulates
from ..syntax import Cmp, IntLit, Stmt, Var, conj, parse_program

Box = Mapping[str, tuple[int, int]]


class InconclusiveBudget(RuntimeError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: str
    mutant_source: str
    input_vars: dict[str, tuple[int, int]]
    known_bad_input: Optional[Env]
    mutation: str

    @property
    def program(self) -> Stmt:
        return parse_program(self.source)

    @property
    def mutant(self) -> Stmt:
        return parse_program(self.mutant_source)


_ENTRIES = [
    # name, input box, known bad input of the mutant, edit
    ("factorial", {"n": (0, 6)}, {"n": 2},
     "outer loop guard `i < n` becomes `i < n - 1`"),
    ("isqrt", {"n": (0, 20)}, {"n": 2},
     "loop guard `_s > x` becomes `_s < x`"),
    ("gcd", {"a": (0, 6), "b": (0, 6)}, {"a": 2, "b": 3},
     "loop guard `not (x == y)` becomes `x > y`"),
]


def _read(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def corpus_path(name: str):
    """Filesystem path of a corpus ``.imp`` file."""
    return resources.files(__name__).joinpath(name)


def load_corpus() -> list[CorpusEntry]:
    return [
        CorpusEntry(
            name=name,
            source=_read(f"{name}.imp"),
            mutant_source=_read(f"{name}_mutant.imp"),
            input_vars=dict(box),
            known_bad_input=Env(bad),
            mutation=edit,
        )
        for name, box, bad, edit in _ENTRIES
    ]


def get_entry(name: str) -> CorpusEntry:
    for entry in load_corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)


def box_precondition(box: Box):
    """``lo <= x and x <= hi`` for every bounded variable, in name order."""
    parts = []
    for name in sorted(box):
        lo, hi = box[name]
        if lo > hi:
            raise ValueError(f"empty range for {name}: {lo}..{hi}")
        parts += [Cmp("<=", IntLit(lo), Var(name)), Cmp("<=", Var(name), IntLit(hi))]
    return conj(*parts)


def box_inputs(box: Box):
    names = sorted(box)
    ranges = [range(box[n][0], box[n][1] + 1) for n in names]
    for values in itertools.product(*ranges):
        yield Env(zip(names, values))


@dataclass
class DifferentialReport:
    inputs: int = 0
    concrete_bad: list[Env] = field(default_factory=list)
    symbolic_bad: list[Env] = field(default_factory=list)
    disagreements: list[str] = field(default_factory=list)
    inconclusive: list[Env] = field(default_factory=list)
    bug_states: int = 0
    finished: bool = False

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.inconclusive

    def __str__(self):
        lines = [
            f"inputs checked: {self.inputs}",
            f"symbolic bug states: {self.bug_states} (stream finished: {self.finished})",
            f"concrete bad inputs: {len(self.concrete_bad)}",
            f"symbolic bad inputs: {len(self.symbolic_bad)}",
        ]
        lines += [f"DISAGREE {d}" for d in self.disagreements]
        lines += [f"INCONCLUSIVE {env}" for env in self.inconclusive]
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines)


def differential_check(
    program: Union[CorpusEntry, Stmt],
    box: Optional[Box] = None,
    fuel: int = 10_000,
    prefix_len: int = 100_000,
    variant: str = "mutant",
    prune: bool = True,
    strict: bool = False,
) -> DifferentialReport:
    """Compare symbolic and concrete bad-input verdicts over every input in ``box``.

    ``variant`` selects the mutant or the original when ``program`` is a
    corpus entry.  With ``strict``, an input whose concrete run exhausts
    ``fuel`` raises InconclusiveBudget instead of only being reported.
    """
    if isinstance(program, CorpusEntry):
        box = program.input_vars if box is None else box
        p = program.mutant if variant == "mutant" else program.program
    else:
        p = program
    if box is None:
        raise ValueError("a finite input box is required")

    report = DifferentialReport()
    bugs = []
    statuses = find_bugs(p, Strategy.BFS, prune=prune, precondition=box_precondition(box))
    for _, status in zip(range(prefix_len), statuses):
        if isinstance(status, Finished):
            report.finished = True
            break
        if isinstance(status, BugFound):
            bugs.append(status.state)
    report.bug_states = len(bugs)

    for v0 in box_inputs(box):
        report.inputs += 1
        outcome = exec_(ConcState(v0, p), fuel)
        covering = [s for s in bugs if eval_bexpr(s.path, v0)]
        if covering:
            report.symbolic_bad.append(v0)
        if isinstance(outcome, StuckAt):
            report.concrete_bad.append(v0)
            if not covering:
                report.disagreements.append(f"{v0}: concrete bug not found symbolically")
            elif not any(simulates(outcome.state, v0, s) for s in covering):
                report.disagreements.append(f"{v0}: no bug state simulates the stuck state")
        elif covering:
            report.disagreements.append(f"{v0}: symbolic bug but concrete run {type(outcome).__name__}")
        if isinstance(outcome, OutOfFuel):
            report.inconclusive.append(v0)
            if strict:
                raise InconclusiveBudget(f"{v0} did not finish within {fuel} steps")
    return report


__all__ = [
    "CorpusEntry", "DifferentialReport", "InconclusiveBudget",
    "box_inputs", "box_precondition", "corpus_path", "differential_check",
    "get_entry", "load_corpus",
]
