"""Recursive-descent parser for integer-coefficient polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (['*'] unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ['^' INT]
    atom   := INT | VARIABLE | '(' expr ')'

Results are plain ``{exponent tuple: int}`` dicts, independent of any field.
"""
from __future__ import annotations

import re

from .errors import FiberConeError


class ParseError(FiberConeError, ValueError):
    """Syntax or name error with a 1-based source location."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.reason = message
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text: str, line: int = 1, col0: int = 1) -> list:
    """Return ``(kind, value, line, col)`` tuples; kinds: int, name, op, end."""
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        col = col0 + start
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), line, col))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), line, col))
        elif m.group(3) is not None:
            toks.append(("op", m.group(3), line, col))
        pos = m.end()
    toks.append(("end", None, line, col0 + len(text)))
    return toks


def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


class _PolyParser:
    def __init__(self, toks: list, variables: tuple):
        self.toks = toks
        self.i = 0
        self.vars = variables
        self.n = len(variables)

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def const(self, c: int) -> dict:
        return {(0,) * self.n: c} if c else {}

    def expr(self) -> dict:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.advance()[1] == "+" else -1
            acc = _padd(acc, self.term(), sign)
        return acc

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "(")

    def term(self) -> dict:
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.advance()
                acc = _pmul(acc, self.unary())
            elif self._starts_factor(tok):
                acc = _pmul(acc, self.unary())
            else:
                return acc

    def unary(self) -> dict:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.advance()
            inner = self.unary()
            return inner if tok[1] == "+" else {m: -c for m, c in inner.items()}
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.advance()
            e = self.peek()
            if e[0] != "int":
                self.error("expected a non-negative integer exponent after '^'")
            self.advance()
            out = self.const(1)
            for _ in range(e[1]):
                out = _pmul(out, base)
            return out
        return base

    def atom(self) -> dict:
        tok = self.peek()
        if tok[0] == "int":
            self.advance()
            return self.const(tok[1])
        if tok[0] == "name":
            self.advance()
            if tok[1] not in self.vars:
                self.error(f"undeclared variable {tok[1]!r}", tok)
            e = [0] * self.n
            e[self.vars.index(tok[1])] = 1
            return {tuple(e): 1}
        if tok[0] == "op" and tok[1] == "(":
            self.advance()
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.advance()
            return inner
        if tok[0] == "end":
            self.error("unexpected end of input, expected a term")
        self.error(f"unexpected {tok[1]!r}")


def parse_polynomial(text: str, variables, line: int = 1, col: int = 1) -> dict:
    p = _PolyParser(tokenize(text, line, col), tuple(variables))
    out = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return out


def parse_polynomial_tokens(toks: list, start: int, variables) -> tuple:
    """Parse one polynomial from a token list; return ``(terms, next index)``."""
    p = _PolyParser(toks, tuple(variables))
    p.i = start
    out = p.expr()
    return out, p.i
