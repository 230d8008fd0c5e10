"""Text syntax for space and action expressions.

Grammar (whitespace-insensitive)::

    space  := "pt" | "empty" | "S(" INT ")" | "P(" INT "," INT ")"
            | "toda(" INT "," INT "," INT ")" | "cone(" INT "," INT ")"
            | "wedge(" space ("," space)+ ")" | "union(" space ("," space)+ ")"
            | "join(" space "," space ")" | "susp(" space ")"
            | "prod(" space "," space ")" | "punct(" space ")"
    action := "trivial(" space ")" | "rotfree(" INT ")" | "suspA(" action ")"
            | "joinA(" action "," action ")"
            | "wedgeA(" action ["@" INT] ("," action ["@" INT])+ ")"
            | "coneA(" INT "," INT ")" | "multA(" INT ")" | "bundleA(" INT ")"
            | "punctA(" action ")"

``P(h, n)`` is the truncated polynomial space P^h(n); ``cone(n, h)`` is the
cone of a map S^(2n-1) -> S^n with Hopf invariant h; ``@k`` picks the
component of a wedge summand's fixed set that carries the basepoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import equivariant as A
from . import space as S

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<punct>[(),@]))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, token: str):
        super().__init__(f"line {line}, column {col}, at {token!r}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.token = token


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(offset):
        line = max(i for i, s in enumerate(line_starts) if s <= offset)
        return line + 1, offset - line_starts[line] + 1

    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            line, col = where(start)
            raise ParseError("unexpected character", line, col, text[start])
        kind = m.lastgroup
        line, col = where(m.start(kind))
        tokens.append(Token(kind, m.group(kind), line, col))
        pos = m.end()
    line, col = where(len(text))
    tokens.append(Token("eof", "<end>", line, col))
    return tokens


SPACE_WORDS = {"pt", "empty", "S", "P", "toda", "cone", "wedge", "union", "join", "susp", "prod", "punct"}
ACTION_WORDS = {"trivial", "rotfree", "suspA", "joinA", "wedgeA", "coneA", "multA", "bundleA", "punctA"}


@dataclass
class DslProgram:
    source: str
    root: object
    spans: dict[tuple[int, ...], tuple[int, int]] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "action" if isinstance(self.root, A.ActionExpr) else "space"


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.spans: dict[tuple[int, ...], tuple[int, int]] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col, tok.text)

    def eat(self, text: str) -> Token:
        if self.tok.text != text:
            self.fail(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    def ints(self, count: int) -> list[int]:
        self.eat("(")
        out = [self.integer()]
        for _ in range(count - 1):
            self.eat(",")
            out.append(self.integer())
        self.eat(")")
        return out

    def build(self, ctor, args, head: Token):
        try:
            return ctor(*args)
        except S.ValidationError as exc:
            self.fail(str(exc), head)

    def space(self, path=()) -> S.SpaceExpr:
        head = self.tok
        if head.kind != "ident" or head.text not in SPACE_WORDS:
            self.fail("expected a space expression")
        self.spans[path] = (head.line, head.col)
        self.i += 1
        w = head.text
        if w == "pt":
            return S.Point()
        if w == "empty":
            return S.Empty()
        if w == "S":
            return self.build(S.Sphere, self.ints(1), head)
        if w == "P":
            return self.build(S.PTrunc, self.ints(2), head)
        if w == "toda":
            return self.build(S.Toda, self.ints(3), head)
        if w == "cone":
            return self.build(S.MappingCone, self.ints(2), head)
        self.eat("(")
        if w in ("wedge", "union"):
            parts = [self.space(path + (0,))]
            while self.tok.text == ",":
                self.eat(",")
                parts.append(self.space(path + (len(parts),)))
            self.eat(")")
            if len(parts) < 2:
                self.fail(f"{w} needs at least two arguments", head)
            return self.build(S.Wedge if w == "wedge" else S.Disjoint, [tuple(parts)], head)
        if w in ("join", "prod"):
            left = self.space(path + (0,))
            self.eat(",")
            right = self.space(path + (1,))
            self.eat(")")
            return self.build(S.Join if w == "join" else S.Product, [left, right], head)
        child = self.space(path + (0,))
        self.eat(")")
        return self.build(S.Susp if w == "susp" else S.Punctured, [child], head)

    def action(self, path=()) -> A.ActionExpr:
        head = self.tok
        if head.kind != "ident" or head.text not in ACTION_WORDS:
            self.fail("expected an action expression")
        self.spans[path] = (head.line, head.col)
        self.i += 1
        w = head.text
        if w == "rotfree":
            return self.build(A.FreeRotation, self.ints(1), head)
        if w == "coneA":
            return self.build(A.ConeA, self.ints(2), head)
        if w == "multA":
            return self.build(A.MultConeA, self.ints(1), head)
        if w == "bundleA":
            return self.build(A.BundleA, self.ints(1), head)
        self.eat("(")
        if w == "trivial":
            sp = self.space(path + (0,))
            self.eat(")")
            return A.Trivial(sp)
        if w == "wedgeA":
            parts, bps = [], []
            while True:
                parts.append(self.action(path + (len(parts),)))
                bp = 0
                if self.tok.text == "@":
                    self.eat("@")
                    bp = self.integer()
                bps.append(bp)
                if self.tok.text != ",":
                    break
                self.eat(",")
            self.eat(")")
            if len(parts) < 2:
                self.fail("wedgeA needs at least two arguments", head)
            return self.build(A.WedgeA, [tuple(parts), tuple(bps)], head)
        if w == "joinA":
            left = self.action(path + (0,))
            self.eat(",")
            right = self.action(path + (1,))
            self.eat(")")
            return A.JoinA(left, right)
        child = self.action(path + (0,))
        self.eat(")")
        return A.SuspA(child) if w == "suspA" else A.Puncture(child)


def parse(text: str, kind: str | None = None) -> DslProgram:
    """Parse a space or action expression; ``kind`` forces one or the other."""
    if not text or not text.strip():
        raise ParseError("empty input", 1, 1, "<end>")
    p = _Parser(text)
    if kind is None:
        kind = "action" if p.tok.text in ACTION_WORDS else "space"
    root = p.action() if kind == "action" else p.space()
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    return DslProgram(text, root, p.spans)


def parse_space(text: str) -> S.SpaceExpr:
    return parse(text, "space").root


def parse_action(text: str) -> A.ActionExpr:
    return parse(text, "action").root


def to_text(e) -> str:
    """Canonical text form; ``parse(to_text(e)).root == e``."""
    if isinstance(e, S.Empty):
        return "empty"
    if isinstance(e, S.Point):
        return "pt"
    if isinstance(e, S.Sphere):
        return f"S({e.k})"
    if isinstance(e, S.PTrunc):
        return f"P({e.h}, {e.n})"
    if isinstance(e, S.Toda):
        return f"toda({e.n}, {e.a}, {e.b})"
    if isinstance(e, S.MappingCone):
        return f"cone({e.n}, {e.hopf})"
    if isinstance(e, (S.Wedge, S.Disjoint)):
        word = "wedge" if isinstance(e, S.Wedge) else "union"
        if len(e.parts) == 1:
            return to_text(e.parts[0])
        return f"{word}({', '.join(to_text(p) for p in e.parts)})"
    if isinstance(e, S.Join):
        return f"join({to_text(e.left)}, {to_text(e.right)})"
    if isinstance(e, S.Susp):
        return f"susp({to_text(e.child)})"
    if isinstance(e, S.Product):
        return f"prod({to_text(e.left)}, {to_text(e.right)})"
    if isinstance(e, S.Punctured):
        return f"punct({to_text(e.child)})"
    if isinstance(e, A.Trivial):
        return f"trivial({to_text(e.space)})"
    if isinstance(e, A.FreeRotation):
        return f"rotfree({e.k})"
    if isinstance(e, A.SuspA):
        return f"suspA({to_text(e.child)})"
    if isinstance(e, A.JoinA):
        return f"joinA({to_text(e.left)}, {to_text(e.right)})"
    if isinstance(e, A.WedgeA):
        items = [to_text(p) + (f"@{b}" if b else "") for p, b in zip(e.parts, e.basepoints)]
        return f"wedgeA({', '.join(items)})"
    if isinstance(e, A.ConeA):
        return f"coneA({e.n}, {e.k})"
    if isinstance(e, A.MultConeA):
        return f"multA({e.n})"
    if isinstance(e, A.BundleA):
        return f"bundleA({e.n})"
    if isinstance(e, A.Puncture):
        return f"punctA({to_text(e.child)})"
    raise TypeError(f"cannot print {e!r}")
