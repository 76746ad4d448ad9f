"""Script language: tokenizer, recursive-descent parser and pretty-printer.

    group G = Z^2                      group P = H * G      (product)
    subgroup A < G = span [[1,0]]      subgroup R < D = span [[2]] refl (1)
    coset C = A + (1,0)                # the coset (1,0)A
    set Y = A | C \\ (0,1) + A & B     # '|' and '\\' bind looser than '&'
    map f : H -> G = piece A -> [[1,2]] + (-1)
    normalize Y   decompose Y   check Y   member Y (1,0)   equal Y Z
    empty Y   graph f   ungraph S   compare Y Z radius 10

``(v) + S`` is the left translate ``vS`` and ``S + (v)`` the right translate
``Sv``.  Group elements of semidirect carriers carry a sign: ``(1,2;-1)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union as TUnion

KEYWORDS = {"group", "subgroup", "coset", "set", "map", "piece", "span", "refl", "empty",
            "full", "radius", "normalize", "decompose", "check", "member", "equal", "graph",
            "ungraph", "compare"}
COMMANDS = ("normalize", "decompose", "check", "member", "equal", "empty", "graph", "ungraph", "compare")
SYMBOLS = ("->", "[", "]", "(", ")", ",", ";", "=", "<", "+", "-", "|", "&", "\\", "^", ":", "*")


class ScriptError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(message)
        self.message, self.line, self.col = message, line, col

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


class ParseError(ScriptError):
    pass


class SemanticError(ScriptError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # "id", "int", "sym", "eof"
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    out, i, line, col = [], 0, 1, 1
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            out.append(Token("int", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            out.append(Token("id", src[i:j], line, col))
            col += j - i
            i = j
            continue
        for s in SYMBOLS:
            if src.startswith(s, i):
                out.append(Token("sym", s, line, col))
                i, col = i + len(s), col + len(s)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("eof", "", line, col))
    return out


# --------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Vec:
    values: tuple
    sign: Optional[int] = None


@dataclass(frozen=True)
class Name:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # "|", "&", "\\"
    left: "SExpr"
    right: "SExpr"


@dataclass(frozen=True)
class Translate:
    side: str  # "left" or "right"
    vec: Vec
    expr: "SExpr"


@dataclass(frozen=True)
class Const:
    which: str  # "empty" or "full"
    group: Optional[str] = None


SExpr = TUnion[Name, BinOp, Translate, Const]


@dataclass(frozen=True)
class Stmt:
    line: int = field(default=0, compare=False, kw_only=True)
    col: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class GroupDecl(Stmt):
    name: str
    kind: str  # "Z" or "Dinf"
    n: int


@dataclass(frozen=True)
class ProductDecl(Stmt):
    name: str
    left: str
    right: str


@dataclass(frozen=True)
class SubgroupDecl(Stmt):
    name: str
    group: str
    rows: tuple
    refl: Optional[tuple] = None


@dataclass(frozen=True)
class CosetDecl(Stmt):
    name: str
    subgroup: str
    rep: Vec


@dataclass(frozen=True)
class SetDecl(Stmt):
    name: str
    expr: SExpr


@dataclass(frozen=True)
class MapPiece:
    domain: SExpr
    rows: tuple
    refl: Optional[Vec]
    offset: Vec


@dataclass(frozen=True)
class MapDecl(Stmt):
    name: str
    source: str
    target: str
    pieces: tuple


@dataclass(frozen=True)
class Command(Stmt):
    name: str
    args: tuple


# --------------------------------------------------------------------------
# parser


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        t = tok or self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(f"{msg}, found {found}", t.line, t.col)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "id") and t.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def close(self, text: str, opener: Token) -> None:
        """Expect a closing bracket; on failure point at the bracket left open."""
        if not self.at(text):
            t = self.tok
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"unclosed {opener.text!r} (expected {text!r}, found {found})",
                             opener.line, opener.col)
        self.i += 1

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "id" or t.text in KEYWORDS:
            raise self.error("expected a name")
        self.i += 1
        return t

    def integer(self) -> int:
        neg = self.accept("-")
        t = self.tok
        if t.kind != "int":
            raise self.error("expected an integer")
        self.i += 1
        return -int(t.text) if neg else int(t.text)

    def int_list(self, close: str) -> tuple:
        vals = []
        if self.at(close):
            return ()
        vals.append(self.integer())
        while self.accept(","):
            vals.append(self.integer())
        return tuple(vals)

    def vec(self) -> Vec:
        opener = self.expect("(")
        vals = self.int_list(")")
        sign = None
        if self.accept(";"):
            if self.accept("-"):
                sign = -1
            else:
                self.accept("+")
                sign = 1
            if self.tok.kind == "int":
                if self.tok.text != "1":
                    raise self.error("a sign must be +1 or -1")
                self.i += 1
        self.close(")", opener)
        return Vec(vals, sign)

    def matrix(self) -> tuple:
        outer = self.expect("[")
        rows = []
        if not self.at("]"):
            while True:
                inner = self.expect("[")
                rows.append(self.int_list("]"))
                self.close("]", inner)
                if not self.accept(","):
                    break
        self.close("]", outer)
        return tuple(rows)

    def _vec_ahead(self) -> bool:
        if not self.at("("):
            return False
        nxt = self.toks[self.i + 1]
        return nxt.kind == "int" or (nxt.kind == "sym" and nxt.text in ("-", ")", ";"))

    # set expressions ------------------------------------------------------

    def setexpr(self) -> SExpr:
        left = self.term()
        while self.at("|") or self.at("\\"):
            op = self.tok.text
            self.i += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> SExpr:
        left = self.factor()
        while self.accept("&"):
            left = BinOp("&", left, self.factor())
        return left

    def factor(self) -> SExpr:
        if self._vec_ahead():
            v = self.vec()
            self.expect("+")
            return Translate("left", v, self.factor())
        e = self.primary()
        while self.at("+") and self.toks[self.i + 1].text == "(":
            self.i += 1
            e = Translate("right", self.vec(), e)
        return e

    def primary(self) -> SExpr:
        if self.at("("):
            opener = self.expect("(")
            e = self.setexpr()
            self.close(")", opener)
            return e
        for which in ("empty", "full"):
            if self.accept(which):
                group = None
                if self.at("(") and self.toks[self.i + 1].kind == "id":
                    opener = self.expect("(")
                    group = self.ident().text
                    self.close(")", opener)
                return Const(which, group)
        t = self.ident()
        return Name(t.text, t.line, t.col)

    # statements -------------------------------------------------------------

    def script(self) -> list:
        out = []
        while self.tok.kind != "eof":
            if self.accept(";"):
                continue
            out.append(self.statement())
        return out

    def statement(self) -> Stmt:
        t = self.tok
        pos = dict(line=t.line, col=t.col)
        if self.accept("group"):
            name = self.ident().text
            self.expect("=")
            if self.tok.kind == "id" and self.tok.text in ("Z", "Dinf") and self.toks[self.i + 1].text == "^":
                kind = self.tok.text
                self.i += 2
                n = self.integer()
                if n < 1:
                    raise self.error("dimension must be positive", self.toks[self.i - 1])
                return GroupDecl(name, kind, n, **pos)
            left = self.ident().text
            self.expect("*")
            right = self.ident().text
            return ProductDecl(name, left, right, **pos)
        if self.accept("subgroup"):
            name = self.ident().text
            self.expect("<")
            group = self.ident().text
            self.expect("=")
            self.expect("span")
            rows = self.matrix()
            refl = None
            if self.accept("refl"):
                v = self.vec()
                if v.sign is not None:
                    raise self.error("a reflection offset takes no sign", t)
                refl = v.values
            return SubgroupDecl(name, group, rows, refl, **pos)
        if self.accept("coset"):
            name = self.ident().text
            self.expect("=")
            sub = self.ident().text
            self.expect("+")
            return CosetDecl(name, sub, self.vec(), **pos)
        if self.accept("set"):
            name = self.ident().text
            self.expect("=")
            return SetDecl(name, self.setexpr(), **pos)
        if self.accept("map"):
            name = self.ident().text
            self.expect(":")
            src = self.ident().text
            self.expect("->")
            dst = self.ident().text
            self.expect("=")
            pieces = []
            while self.accept("piece"):
                dom = self.setexpr()
                self.expect("->")
                rows = self.matrix()
                refl = self.vec() if self.accept("refl") else None
                self.expect("+")
                pieces.append(MapPiece(dom, rows, refl, self.vec()))
            if not pieces:
                raise self.error("expected 'piece'")
            return MapDecl(name, src, dst, tuple(pieces), **pos)
        if t.kind == "id" and t.text in COMMANDS:
            self.i += 1
            return self.command(t.text, pos)
        raise self.error("expected a declaration or command")

    def command(self, name: str, pos) -> Command:
        if name in ("normalize", "decompose", "check", "empty", "graph", "ungraph"):
            args = (self.ident().text,)
        elif name == "member":
            args = (self.ident().text, self.vec())
        elif name == "equal":
            args = (self.ident().text, self.ident().text)
        else:  # compare
            a, b = self.ident().text, self.ident().text
            r = None
            if self.accept("radius"):
                r = self.integer()
                if r < 0:
                    raise self.error("radius must be nonnegative", self.toks[self.i - 1])
            args = (a, b, r)
        return Command(name, args, **pos)


def parse(src: str) -> list:
    return Parser(src).script()


# --------------------------------------------------------------------------
# pretty-printer


def fmt_vec(v: Vec) -> str:
    body = ",".join(map(str, v.values))
    if v.sign is not None:
        body += ";" + ("-1" if v.sign == -1 else "+1")
    return f"({body})"


def fmt_rows(rows) -> str:
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in rows) + "]"


def fmt_expr(e: SExpr) -> str:
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Const):
        return e.which if e.group is None else f"{e.which}({e.group})"
    if isinstance(e, BinOp):
        return f"({fmt_expr(e.left)} {e.op} {fmt_expr(e.right)})"
    if isinstance(e, Translate):
        if e.side == "left":
            return f"({fmt_vec(e.vec)} + {fmt_expr(e.expr)})"
        return f"({fmt_expr(e.expr)} + {fmt_vec(e.vec)})"
    raise TypeError(e)


def fmt_stmt(s: Stmt) -> str:
    if isinstance(s, GroupDecl):
        return f"group {s.name} = {s.kind}^{s.n}"
    if isinstance(s, ProductDecl):
        return f"group {s.name} = {s.left} * {s.right}"
    if isinstance(s, SubgroupDecl):
        out = f"subgroup {s.name} < {s.group} = span {fmt_rows(s.rows)}"
        if s.refl is not None:
            out += " refl " + fmt_vec(Vec(s.refl))
        return out
    if isinstance(s, CosetDecl):
        return f"coset {s.name} = {s.subgroup} + {fmt_vec(s.rep)}"
    if isinstance(s, SetDecl):
        return f"set {s.name} = {fmt_expr(s.expr)}"
    if isinstance(s, MapDecl):
        parts = [f"map {s.name} : {s.source} -> {s.target} ="]
        for p in s.pieces:
            line = f"  piece {fmt_expr(p.domain)} -> {fmt_rows(p.rows)}"
            if p.refl is not None:
                line += " refl " + fmt_vec(p.refl)
            parts.append(line + " + " + fmt_vec(p.offset))
        return "\n".join(parts)
    if isinstance(s, Command):
        args = []
        for a in s.args:
            if isinstance(a, Vec):
                args.append(fmt_vec(a))
            elif a is not None:
                args.append(str(a))
        if s.name == "compare" and s.args[2] is not None:
            args = [str(s.args[0]), str(s.args[1]), "radius", str(s.args[2])]
        return " ".join([s.name] + args)
    raise TypeError(s)


def pretty(stmts) -> str:
    return "".join(fmt_stmt(s) + "\n" for s in stmts)
