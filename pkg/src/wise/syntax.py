"""IMP abstract syntax, parser and pretty-printer.

Grammar (tightest binding first for boolean operators: ``not``, comparison,
``and``, ``or``)::

    stmt  ::= simple [ ";" stmt ]
    simple::= "skip" | "fail" | VAR "=" aexpr
            | "while" bexpr "do" stmt "od"
            | "if" bexpr "then" stmt "else" stmt "fi"
            | "(" stmt ")"
    bexpr ::= conj { "or" conj }
    conj  ::= unary { "and" unary }
    unary ::= "not" unary | "true" | "false" | aexpr CMP aexpr | "(" bexpr ")"
    aexpr ::= term { ("+" | "-") term }
    term  ::= INT | VAR | "-" term | "(" aexpr ")"

``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

RESERVED = frozenset(
    "skip fail while do od if then else fi true false and or not".split()
)
CMP_OPS = ("==", "<=", "<", ">=", ">")


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True, slots=True)
class IntLit:
    value: int


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Add:
    left: Aexpr
    right: Aexpr


@dataclass(frozen=True, slots=True)
class Sub:
    left: Aexpr
    right: Aexpr


Aexpr = Union[IntLit, Var, Add, Sub]


@dataclass(frozen=True, slots=True)
class BTrue:
    pass


@dataclass(frozen=True, slots=True)
class BFalse:
    pass


@dataclass(frozen=True, slots=True)
class And:
    left: Bexpr
    right: Bexpr


@dataclass(frozen=True, slots=True)
class Or:
    left: Bexpr
    right: Bexpr


@dataclass(frozen=True, slots=True)
class Not:
    arg: Bexpr


@dataclass(frozen=True, slots=True)
class Cmp:
    op: str
    left: Aexpr
    right: Aexpr

    def __post_init__(self):
        if self.op not in CMP_OPS:
            raise ValueError(f"unknown comparison {self.op!r}")


Bexpr = Union[BTrue, BFalse, And, Or, Not, Cmp]


@dataclass(frozen=True, slots=True)
class Skip:
    pass


@dataclass(frozen=True, slots=True)
class Fail:
    pass


@dataclass(frozen=True, slots=True)
class Assign:
    var: str
    rhs: Aexpr


@dataclass(frozen=True, slots=True)
class Seq:
    first: Stmt
    second: Stmt


@dataclass(frozen=True, slots=True)
class While:
    cond: Bexpr
    body: Stmt


@dataclass(frozen=True, slots=True)
class If:
    cond: Bexpr
    then: Stmt
    else_: Stmt


Stmt = Union[Skip, Fail, Assign, Seq, While, If]

SKIP = Skip()
FAIL = Fail()
TRUE = BTrue()
FALSE = BFalse()


def seq(*stmts: Stmt) -> Stmt:
    """Right-nested sequence of ``stmts`` (``skip`` when empty)."""
    if not stmts:
        return SKIP
    result = stmts[-1]
    for s in reversed(stmts[:-1]):
        result = Seq(s, result)
    return result


def conj(*parts: Bexpr) -> Bexpr:
    if not parts:
        return TRUE
    result = parts[0]
    for p in parts[1:]:
        result = And(result, p)
    return result


def aexpr_vars(e: Aexpr) -> set[str]:
    out: set[str] = set()
    stack = [e]
    while stack:
        e = stack.pop()
        if isinstance(e, Var):
            out.add(e.name)
        elif isinstance(e, (Add, Sub)):
            stack.append(e.left)
            stack.append(e.right)
    return out


def bexpr_vars(b: Bexpr) -> set[str]:
    out: set[str] = set()
    stack = [b]
    while stack:
        b = stack.pop()
        if isinstance(b, (And, Or)):
            stack.append(b.left)
            stack.append(b.right)
        elif isinstance(b, Not):
            stack.append(b.arg)
        elif isinstance(b, Cmp):
            out |= aexpr_vars(b.left)
            out |= aexpr_vars(b.right)
    return out


def stmt_vars(s: Stmt) -> set[str]:
    out: set[str] = set()
    stack = [s]
    while stack:
        s = stack.pop()
        if isinstance(s, Assign):
            out.add(s.var)
            out |= aexpr_vars(s.rhs)
        elif isinstance(s, Seq):
            stack.append(s.first)
            stack.append(s.second)
        elif isinstance(s, While):
            out |= bexpr_vars(s.cond)
            stack.append(s.body)
        elif isinstance(s, If):
            out |= bexpr_vars(s.cond)
            stack.append(s.then)
            stack.append(s.else_)
    return out


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>==|<=|>=|<|>|=|\+|-|;|\(|\))
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "int", "ident", "kw", "op", "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "ident" and lexeme in RESERVED:
            kind = "kw"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# Parser

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(tok.line, tok.column, message)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("kw", "op") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def ident(self) -> str:
        tok = self.tok
        if tok.kind == "kw":
            raise self.error(f"reserved word {tok.text!r} used as identifier")
        if tok.kind != "ident":
            raise self.error(f"expected identifier, found {tok.text or 'end of input'!r}")
        self.pos += 1
        return tok.text

    # statements

    def stmt(self) -> Stmt:
        first = self.simple()
        if self.at(";"):
            self.pos += 1
            return Seq(first, self.stmt())
        return first

    def simple(self) -> Stmt:
        tok = self.tok
        nxt = self.tokens[self.pos + 1] if tok.kind != "eof" else tok
        if tok.kind == "kw" and nxt.kind == "op" and nxt.text == "=":
            raise self.error(f"reserved word {tok.text!r} used as identifier")
        if self.at("skip"):
            self.pos += 1
            return SKIP
        if self.at("fail"):
            self.pos += 1
            return FAIL
        if self.at("while"):
            self.pos += 1
            cond = self.bexpr()
            self.expect("do")
            body = self.stmt()
            self.expect("od")
            return While(cond, body)
        if self.at("if"):
            self.pos += 1
            cond = self.bexpr()
            self.expect("then")
            then = self.stmt()
            self.expect("else")
            else_ = self.stmt()
            self.expect("fi")
            return If(cond, then, else_)
        if self.at("("):
            self.pos += 1
            s = self.stmt()
            self.expect(")")
            return s
        if tok.kind in ("ident", "kw"):
            name = self.ident()
            self.expect("=")
            return Assign(name, self.aexpr())
        raise self.error(f"expected statement, found {tok.text or 'end of input'!r}")

    # boolean expressions

    def bexpr(self) -> Bexpr:
        left = self.conj()
        while self.at("or"):
            self.pos += 1
            left = Or(left, self.conj())
        return left

    def conj(self) -> Bexpr:
        left = self.unary()
        while self.at("and"):
            self.pos += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Bexpr:
        if self.at("not"):
            self.pos += 1
            return Not(self.unary())
        if self.at("true"):
            self.pos += 1
            return TRUE
        if self.at("false"):
            self.pos += 1
            return FALSE
        if self.at("("):
            # Either a parenthesised arithmetic operand of a comparison or a
            # parenthesised boolean expression; try the comparison first.
            saved = self.pos
            try:
                return self.comparison()
            except ParseError:
                self.pos = saved
            self.pos += 1
            b = self.bexpr()
            self.expect(")")
            return b
        return self.comparison()

    def comparison(self) -> Bexpr:
        left = self.aexpr()
        tok = self.tok
        if tok.kind != "op" or tok.text not in CMP_OPS:
            raise self.error(f"expected comparison operator, found {tok.text or 'end of input'!r}")
        self.pos += 1
        right = self.aexpr()
        if self.tok.kind == "op" and self.tok.text in CMP_OPS:
            raise self.error("comparisons do not chain")
        return Cmp(tok.text, left, right)

    # arithmetic expressions

    def aexpr(self) -> Aexpr:
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.pos += 1
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> Aexpr:
        tok = self.tok
        if tok.kind == "int":
            self.pos += 1
            return IntLit(int(tok.text))
        if self.at("-"):
            self.pos += 1
            return Sub(IntLit(0), self.term())
        if self.at("("):
            self.pos += 1
            e = self.aexpr()
            self.expect(")")
            return e
        if tok.kind in ("ident", "kw"):
            return Var(self.ident())
        raise self.error(f"expected expression, found {tok.text or 'end of input'!r}")


def parse_program(text: str) -> Stmt:
    p = _Parser(text)
    s = p.stmt()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after end of program")
    return s


def parse_bexpr(text: str) -> Bexpr:
    p = _Parser(text)
    b = p.bexpr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after end of expression")
    return b


def parse_aexpr(text: str) -> Aexpr:
    p = _Parser(text)
    e = p.aexpr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after end of expression")
    return e


# ---------------------------------------------------------------------------
# Pretty-printer

def pretty_aexpr(e: Aexpr) -> str:
    if isinstance(e, IntLit):
        return str(e.value) if e.value >= 0 else f"(0 - {-e.value})"
    if isinstance(e, Var):
        return e.name
    op = "+" if isinstance(e, Add) else "-"
    right = pretty_aexpr(e.right)
    if isinstance(e.right, (Add, Sub)):
        right = f"({right})"
    return f"{pretty_aexpr(e.left)} {op} {right}"


_BPREC = {Or: 1, And: 2}


def pretty_bexpr(b: Bexpr) -> str:
    if isinstance(b, BTrue):
        return "true"
    if isinstance(b, BFalse):
        return "false"
    if isinstance(b, Cmp):
        return f"{pretty_aexpr(b.left)} {b.op} {pretty_aexpr(b.right)}"
    if isinstance(b, Not):
        inner = pretty_bexpr(b.arg)
        if isinstance(b.arg, (And, Or, Cmp)):
            inner = f"({inner})"
        return f"not {inner}"
    # And / Or: left-associative, so a right operand of equal or lower
    # precedence needs parentheses, a left operand only if lower.
    prec = _BPREC[type(b)]
    kw = "and" if isinstance(b, And) else "or"
    parts = []
    # Walk the left spine iteratively; path conditions nest deeply there.
    node = b
    while type(node) is type(b):
        right = node.right
        text = pretty_bexpr(right)
        if _BPREC.get(type(right), 3) <= prec:
            text = f"({text})"
        parts.append(text)
        node = node.left
    text = pretty_bexpr(node)
    if _BPREC.get(type(node), 3) < prec:
        text = f"({text})"
    parts.append(text)
    return f" {kw} ".join(reversed(parts))


def pretty(s: Stmt) -> str:
    if isinstance(s, Skip):
        return "skip"
    if isinstance(s, Fail):
        return "fail"
    if isinstance(s, Assign):
        return f"{s.var} = {pretty_aexpr(s.rhs)}"
    if isinstance(s, Seq):
        first = pretty(s.first)
        if isinstance(s.first, Seq):
            first = f"({first})"
        return f"{first} ; {pretty(s.second)}"
    if isinstance(s, While):
        return f"while {pretty_bexpr(s.cond)} do {pretty(s.body)} od"
    if isinstance(s, If):
        return f"if {pretty_bexpr(s.cond)} then {pretty(s.then)} else {pretty(s.else_)} fi"
    raise TypeError(f"not a statement: {s!r}")


def iter_seq(s: Stmt) -> Iterator[Stmt]:
    """Yield the components of a right-nested sequence."""
    while isinstance(s, Seq):
        yield s.first
        s = s.second
    yield s
