"""Polynomial expression grammar.

    expr   := ['-'|'+'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := coefficient | variable ('^' uint)? | '(' expr ')' ('^' uint)?

Coefficients are unsigned integers or ``a/b``.  Implicit multiplication
("2x", "x y") is rejected.  Columns and lines in errors are 1-based.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .errors import ParseError
from .polynomial import PolyRing, Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            line, col = _position(text, i)
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        i = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        line, col = _position(self.text, tok[2])
        raise ParseError(msg, line, col)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif t[0] in ("num", "name") or (t[0] == "op" and t[1] == "("):
                self.fail("implicit multiplication is not allowed; use '*'")
            else:
                return acc

    def exponent(self, base: Polynomial) -> Polynomial:
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num" or "/" in e[1]:
                self.fail("exponent must be a non-negative integer", e)
            return base ** int(e[1])
        return base

    def factor(self) -> Polynomial:
        t = self.take()
        kind, val = t[0], t[1]
        if kind == "num":
            try:
                c = Fraction(val)
                return self.ring.const(c)
            except ZeroDivisionError:
                self.fail("division by zero in coefficient", t)
        if kind == "name":
            if val not in self.ring.names:
                self.fail(f"unknown variable {val!r}", t)
            return self.exponent(self.ring.var(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.fail("expected ')'", close)
            return self.exponent(inner)
        if kind == "end":
            self.fail("unexpected end of input", t)
        self.fail(f"unexpected {val!r}", t)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``; raises :class:`ParseError`."""
    return _Parser(text, ring).parse()


def parse_ring_names(value) -> List[str]:
    """Expand ``"x0..x5"`` style ranges and comma lists into variable names."""
    if isinstance(value, (list, tuple)):
        out = []
        for s in value:
            out.extend(parse_ring_names(s))
        return out
    out = []
    for part in str(value).split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"([A-Za-z_]+)(\d+)\.\.\1?(\d+)", part)
        if m:
            base, a, b = m.group(1), int(m.group(2)), int(m.group(3))
            out.extend(f"{base}{i}" for i in range(a, b + 1))
        else:
            out.append(part)
    return out
