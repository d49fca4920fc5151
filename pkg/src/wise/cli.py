"""Command-line front end: ``wise check FILE``.

Exit codes: 0 safe (exploration finished, no bug), 1 bug confirmed,
2 parse error, 3 budget exhausted or solver gave up, 4 I/O error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, TextIO

from . import solver
from .concrete import Env
from .engine import BugFound, Finished, Strategy, confirm, find_bugs
from .corpus import box_precondition
from .symbolic import SymState
from .syntax import ParseError, bexpr_vars, parse_program, pretty, pretty_bexpr

EXIT_SAFE, EXIT_BUG, EXIT_PARSE, EXIT_UNKNOWN, EXIT_IO = 0, 1, 2, 3, 4


@dataclass
class CliConfig:
    input_path: Path
    max_steps: int = 10_000
    strategy: Strategy = Strategy.BFS
    prune: bool = False
    emit_smt_dir: Optional[Path] = None
    solver_budget: int = solver.DEFAULT_BUDGET
    domain_bounds: dict[str, tuple[int, int]] = field(default_factory=dict)
    verbose: bool = False


# Events produced while scanning the status stream.

@dataclass(frozen=True)
class Bug:
    state: SymState
    model: Env


@dataclass(frozen=True)
class Progress:
    items: int
    bugs: int


@dataclass(frozen=True)
class Outcome:
    verdict: str  # "SAFE" | "BUG" | "UNKNOWN"
    bugs: int


def scan(program, config: CliConfig) -> Iterator[object]:
    """Consume at most ``max_steps`` statuses, yielding Bug/Progress events
    and finally an Outcome."""
    statuses = find_bugs(
        program,
        config.strategy,
        prune=config.prune,
        precondition=box_precondition(config.domain_bounds),
        solver_budget=config.solver_budget,
    )
    bugs = 0
    unknown = False
    finished = False
    for i, status in zip(range(config.max_steps), statuses):
        if isinstance(status, Finished):
            finished = True
            break
        if isinstance(status, BugFound):
            res = confirm(program, status.state, config.max_steps, config.solver_budget)
            if isinstance(res, solver.Sat):
                bugs += 1
                yield Bug(status.state, res.model)
            elif isinstance(res, solver.Unknown):
                unknown = True
        if (i + 1) % 1000 == 0:
            yield Progress(i + 1, bugs)
    if bugs:
        yield Outcome("BUG", bugs)
    elif finished and not unknown:
        yield Outcome("SAFE", 0)
    else:
        yield Outcome("UNKNOWN", 0)


def format_model(state: SymState, model) -> str:
    names = sorted(bexpr_vars(state.path) | model.bound())
    return ",".join(f"{v}={model[v]}" for v in names)


def report_format(events: Iterable[object], verbose: bool = False) -> Iterator[str]:
    for event in events:
        if isinstance(event, Bug):
            yield (
                f"BUG pc={pretty(event.state.pc)} path={pretty_bexpr(event.state.path)}"
                f" model={format_model(event.state, event.model)}"
            )
        elif isinstance(event, Progress):
            if verbose:
                yield f"PROGRESS items={event.items} bugs={event.bugs}"
        elif isinstance(event, Outcome):
            if event.verdict == "BUG":
                yield f"BUG FOUND ({event.bugs})"
            else:
                yield event.verdict


_DOMAIN_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)=(-?\d+)\.\.(-?\d+)$")


def _domain(text: str) -> tuple[str, int, int]:
    m = _DOMAIN_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected VAR=LO..HI, got {text!r}")
    name, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {lo}..{hi} for {name}")
    return name, lo, hi


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wise", description="Symbolic bug finder for IMP programs.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="search a program for reachable fail statements")
    check.add_argument("file", type=Path)
    check.add_argument("--max-steps", type=_positive, default=10_000,
                       help="number of stream items to explore (default: 10000)")
    check.add_argument("--depth-first", action="store_true", help="explore depth-first instead of breadth-first")
    check.add_argument("--prune", action="store_true", help="drop states with unsatisfiable path conditions")
    check.add_argument("--emit-smt", type=Path, metavar="DIR", help="write each bug's path condition as SMT-LIB2")
    check.add_argument("--domain", type=_domain, action="append", default=[], metavar="VAR=LO..HI",
                       help="restrict an input variable to a range (repeatable)")
    check.add_argument("--verbose", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    budget = os.environ.get("WISE_SOLVER_BUDGET")
    return CliConfig(
        input_path=args.file,
        max_steps=args.max_steps,
        strategy=Strategy.DFS if args.depth_first else Strategy.BFS,
        prune=args.prune,
        emit_smt_dir=args.emit_smt,
        solver_budget=int(budget) if budget else solver.DEFAULT_BUDGET,
        domain_bounds={name: (lo, hi) for name, lo, hi in args.domain},
        verbose=args.verbose,
    )


def check(config: CliConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        text = config.input_path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {config.input_path}: {exc}", file=err)
        return EXIT_IO
    try:
        program = parse_program(text)
    except ParseError as exc:
        print(f"{config.input_path}:{exc.line}:{exc.column}: parse error: {exc.message}", file=err)
        return EXIT_PARSE

    bugs: list[Bug] = []
    outcome = None

    def events():
        nonlocal outcome
        for event in scan(program, config):
            if isinstance(event, Bug):
                bugs.append(event)
            elif isinstance(event, Outcome):
                outcome = event
            yield event

    for line in report_format(events(), config.verbose):
        print(line, file=out)

    if config.emit_smt_dir is not None and bugs:
        try:
            config.emit_smt_dir.mkdir(parents=True, exist_ok=True)
            for k, bug in enumerate(bugs, 1):
                (config.emit_smt_dir / f"bug_{k}.smt2").write_text(
                    solver.emit_smtlib(bug.state.path), encoding="utf-8"
                )
        except OSError as exc:
            print(f"error: cannot write SMT files: {exc}", file=err)
            return EXIT_IO

    return {"SAFE": EXIT_SAFE, "BUG": EXIT_BUG}.get(outcome.verdict, EXIT_UNKNOWN)


def main(argv: Optional[list[str]] = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))
    args = build_parser().parse_args(argv)
    return check(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
