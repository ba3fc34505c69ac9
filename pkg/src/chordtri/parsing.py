"""Reader and printer for the textual polynomial-system format.

Grammar (whitespace ignored, ``#`` starts a comment running to end of line)::

    system := poly (';' poly)* [';']
    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := integer | integer '/' uint | identifier | '(' poly ')'

Multiplication must be written explicitly.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ParseError
from .field import QQ, CoefficientField
from .poly import Polynomial, PolyRing, format_poly

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^();])
""", re.VERBOSE)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def tokenize(src: str) -> list:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            toks.append(_Tok(kind, text, line, pos - line_start + 1))
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = pos + text.rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# The parser builds a tiny expression tree first, so variables can be collected
# (for first-appearance ordering) before the ring exists.
class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0
        self.seen: list = []

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        where = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{msg} at {where}", tok.line, tok.col)

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def system(self):
        polys = []
        if self.tok.kind == "eof":
            return polys
        polys.append(self.poly())
        while self.accept(";"):
            if self.tok.kind == "eof":
                break
            polys.append(self.poly())
        if self.tok.kind != "eof":
            self.error("expected ';' or end of input")
        return polys

    def poly(self):
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        node = self.term()
        if sign < 0:
            node = ("neg", node)
        while True:
            if self.accept("+"):
                node = ("add", node, self.term())
            elif self.accept("-"):
                node = ("sub", node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while self.accept("*"):
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.accept("^"):
            if self.tok.kind != "int":
                self.error("expected a non-negative integer exponent")
            node = ("pow", node, int(self.tok.text))
            self.i += 1
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            value = Fraction(int(tok.text))
            if self.accept("/"):
                if self.tok.kind != "int":
                    self.error("expected an unsigned integer denominator")
                den = int(self.tok.text)
                if den == 0:
                    self.error("zero denominator")
                value = Fraction(int(tok.text), den)
                self.i += 1
            return ("num", value)
        if tok.kind == "ident":
            self.i += 1
            if tok.text not in self.seen:
                self.seen.append(tok.text)
            return ("var", tok.text)
        if self.accept("("):
            node = self.poly()
            self.expect(")")
            return node
        self.error("expected a number, variable or '('")


def _build(node, ring: PolyRing) -> Polynomial:
    kind = node[0]
    if kind == "num":
        return ring.constant(node[1])
    if kind == "var":
        return ring.var(node[1])
    if kind == "neg":
        return -_build(node[1], ring)
    if kind == "pow":
        return _build(node[1], ring) ** node[2]
    a, b = _build(node[1], ring), _build(node[2], ring)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    return a * b


def parse_system(src: str, ordering: Optional[Sequence[str]] = None,
                 field: CoefficientField = QQ):
    """Parse ``src`` into ``(polynomials, ring)``.

    ``ordering`` lists variable names from smallest to greatest; it may name
    variables absent from the text. Without it the variables are ordered by
    first appearance.
    """
    parser = _Parser(src)
    trees = parser.system()
    if ordering is None:
        names = list(parser.seen)
    else:
        names = [str(v).strip() for v in ordering]
        unknown = [v for v in parser.seen if v not in names]
        if unknown:
            raise ParseError(f"variable {unknown[0]!r} missing from the explicit ordering", 1, 1)
    ring = PolyRing(names, field)
    return [_build(t, ring) for t in trees], ring


def parse_poly(src: str, ring: PolyRing) -> Polynomial:
    """Parse one polynomial over an existing ring."""
    parser = _Parser(src)
    if parser.tok.kind == "eof":
        parser.error("empty polynomial")
    tree = parser.poly()
    if parser.tok.kind != "eof":
        parser.error("trailing input")
    for v in parser.seen:
        if v not in ring.names:
            raise ParseError(f"unknown variable {v!r}", 1, 1)
    return _build(tree, ring)


def format_system(polys: Sequence[Polynomial]) -> str:
    return ";\n".join(format_poly(p) for p in polys)
