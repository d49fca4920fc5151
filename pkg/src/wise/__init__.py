"""Symbolic-execution bug finder for the IMP language."""

from .concrete import ConcState, Env, bad_input, eval_aexpr, eval_bexpr, exec_, step
from .engine import BugFound, Finished, Pending, Strategy, display, find_bugs, has_bug, run
from .solver import emit_smtlib, is_sat
from .symbolic import SymState, SymStore, concretize, expand, is_stuck_sym, simulates
from .syntax import ParseError, parse_program, pretty

__all__ = [
    "BugFound", "ConcState", "Env", "Finished", "ParseError", "Pending", "Strategy",
    "SymState", "SymStore", "bad_input", "concretize", "display", "emit_smtlib",
    "eval_aexpr", "eval_bexpr", "exec_", "expand", "find_bugs", "has_bug", "is_sat",
    "is_stuck_sym", "parse_program", "pretty", "run", "simulates", "step",
]

__version__ = "0.1.0"
