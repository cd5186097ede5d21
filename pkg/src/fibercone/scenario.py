"""Plain-text scenario files: a ring, named ideals and filtrations, tasks.

Example::

    ring x y mod x*y, y^2          # optional homogeneous relations
    ideal I = x
    ideal m = x, y
    ideal N = m^2 + I              # ideal expressions over declared ideals
    filtration F = adic(I)
    filtration S = seeded([N; m^3], u=2)
    filtration G = rescale(F, 3)
    filtration H = quotient(F, I)
    task report F m

Every name must be declared before it is used.  Polynomials have integer
coefficients and must be homogeneous.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .parsing import ParseError, parse_polynomial_tokens, tokenize
from .poly import format_polynomial

TASK_KINDS = ("report", "multiplicity", "cm", "spread", "reduction", "fc-sequence",
              "cor43-scan")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class ScenarioNameError(ParseError):
    """A reference to a name that was not declared (or a clash of names)."""

    def __init__(self, name: str, message: str, line: int, col: int):
        super().__init__(message, line, col)
        self.name = name


Terms = tuple  # sorted ((exponent tuple, int coefficient), ...)


@dataclass(frozen=True)
class IdealDecl:
    name: str
    gens: tuple = ()          # tuple of Terms
    expr: tuple = ()          # sum of products: ((name, power), ...) per summand

    @property
    def is_expr(self) -> bool:
        return bool(self.expr)


@dataclass(frozen=True)
class FiltrationDecl:
    name: str
    kind: str                 # adic | seeded | rescale | quotient
    args: tuple               # see the module docstring for the shapes
    checked: bool = True      # seeded only: validate the filtration axioms


@dataclass(frozen=True)
class TaskDecl:
    kind: str
    args: tuple
    options: tuple = ()       # sorted (key, value) pairs
    line: int = 0

    def option(self, key, default=None):
        return dict(self.options).get(key, default)


@dataclass(frozen=True)
class Scenario:
    variables: tuple
    relations: tuple = ()     # tuple of Terms
    ideals: tuple = ()
    filtrations: tuple = ()
    tasks: tuple = field(default=(), compare=False)
    task_list: tuple = ()     # tasks without source lines, used for equality

    def ideal(self, name: str) -> IdealDecl:
        return next(d for d in self.ideals if d.name == name)

    def filtration(self, name: str) -> FiltrationDecl:
        return next(d for d in self.filtrations if d.name == name)


def _terms(d: dict) -> Terms:
    return tuple(sorted(d.items()))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Line:
    def __init__(self, text: str, lineno: int):
        self.toks = tokenize(text, lineno, 1)
        self.i = 0
        self.lineno = lineno

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def at_end(self) -> bool:
        return self.peek()[0] == "end"

    def expect_op(self, op: str):
        tok = self.peek()
        if tok[:2] != ("op", op):
            what = "end of line" if tok[0] == "end" else repr(tok[1])
            self.error(f"expected {op!r}, found {what}")
        return self.advance()

    def expect_name(self, what: str = "a name"):
        tok = self.peek()
        if tok[0] != "name":
            self.error(f"expected {what}")
        return self.advance()

    def expect_int(self, what: str = "an integer"):
        tok = self.peek()
        if tok[0] != "int":
            self.error(f"expected {what}")
        return self.advance()

    def expect_end(self):
        if not self.at_end():
            self.error(f"unexpected {self.peek()[1]!r}")


class _ScenarioParser:
    def __init__(self):
        self.variables = None
        self.relations = ()
        self.ideals: dict = {}
        self.filtrations: dict = {}
        self.tasks: list = []

    def _polys(self, ln: _Line) -> tuple:
        out = []
        while True:
            start = ln.peek()
            try:
                terms, ln.i = parse_polynomial_tokens(ln.toks, ln.i, self.variables)
            except ParseError as e:
                if e.reason.startswith("undeclared variable"):
                    raise ScenarioNameError(e.reason.split()[-1].strip("'"), e.reason,
                                            e.line, e.col) from None
                raise
            if len({sum(m) for m in terms}) > 1:
                raise ParseError("polynomial is not homogeneous", start[2], start[3])
            out.append(_terms(terms))
            if ln.peek()[:2] != ("op", ","):
                return tuple(out)
            ln.advance()

    def _check_new(self, tok):
        name = tok[1]
        if name in self.variables or name in self.ideals or name in self.filtrations:
            raise ScenarioNameError(name, f"name {name!r} is already declared", tok[2], tok[3])
        if name in TASK_KINDS or name in ("ring", "ideal", "filtration", "task"):
            raise ScenarioNameError(name, f"{name!r} is a reserved word", tok[2], tok[3])

    def _ideal_ref(self, ln: _Line) -> str:
        tok = ln.expect_name("an ideal name")
        if tok[1] not in self.ideals:
            raise ScenarioNameError(tok[1], f"undeclared ideal {tok[1]!r}", tok[2], tok[3])
        return tok[1]

    def _filt_ref(self, ln: _Line) -> str:
        tok = ln.expect_name("a filtration name")
        if tok[1] not in self.filtrations:
            raise ScenarioNameError(tok[1], f"undeclared filtration {tok[1]!r}", tok[2], tok[3])
        return tok[1]

    def ring(self, ln: _Line):
        if self.variables is not None:
            ln.error("ring declared twice", ln.toks[0])
        names = []
        while ln.peek()[0] == "name" and ln.peek()[1] != "mod":
            tok = ln.advance()
            if tok[1] in names:
                raise ScenarioNameError(tok[1], f"variable {tok[1]!r} declared twice",
                                        tok[2], tok[3])
            names.append(tok[1])
        if not names:
            ln.error("expected at least one variable")
        self.variables = tuple(names)
        if ln.peek()[:2] == ("name", "mod"):
            ln.advance()
            self.relations = self._polys(ln)
        ln.expect_end()

    def ideal(self, ln: _Line):
        tok = ln.expect_name("an ideal name")
        self._check_new(tok)
        ln.expect_op("=")
        first = ln.peek()
        if first[0] == "name" and first[1] in self.ideals:
            expr = []
            while True:
                prod = []
                while True:
                    name = self._ideal_ref(ln)
                    power = 1
                    if ln.peek()[:2] == ("op", "^"):
                        ln.advance()
                        power = ln.expect_int("a non-negative exponent")[1]
                    prod.append((name, power))
                    if ln.peek()[:2] != ("op", "*"):
                        break
                    ln.advance()
                expr.append(tuple(prod))
                if ln.peek()[:2] != ("op", "+"):
                    break
                ln.advance()
            ln.expect_end()
            self.ideals[tok[1]] = IdealDecl(tok[1], expr=tuple(expr))
        else:
            gens = self._polys(ln)
            ln.expect_end()
            self.ideals[tok[1]] = IdealDecl(tok[1], gens=gens)

    def filtration(self, ln: _Line):
        tok = ln.expect_name("a filtration name")
        self._check_new(tok)
        ln.expect_op("=")
        kind_tok = ln.expect_name("adic, seeded, rescale or quotient")
        kind = kind_tok[1]
        ln.expect_op("(")
        checked = True
        if kind == "adic":
            args = (self._ideal_ref(ln),)
        elif kind == "seeded":
            ln.expect_op("[")
            seeds = [self._ideal_ref(ln)]
            while ln.peek()[:2] == ("op", ";"):
                ln.advance()
                seeds.append(self._ideal_ref(ln))
            ln.expect_op("]")
            u = len(seeds)
            while ln.peek()[:2] == ("op", ","):
                ln.advance()
                key = ln.expect_name("u or check")
                ln.expect_op("=")
                if key[1] == "u":
                    u = ln.expect_int("the stability index")[1]
                elif key[1] == "check":
                    val = ln.expect_name("true or false")
                    if val[1] not in ("true", "false"):
                        ln.error("expected true or false", val)
                    checked = val[1] == "true"
                else:
                    ln.error(f"unknown option {key[1]!r}", key)
            if u != len(seeds):
                ln.error(f"u = {u} but {len(seeds)} seeds were given", kind_tok)
            args = (tuple(seeds), u)
        elif kind == "rescale":
            name = self._filt_ref(ln)
            ln.expect_op(",")
            T = ln.expect_int("a rescaling factor")[1]
            if T < 1:
                ln.error("rescaling factor must be at least 1")
            args = (name, T)
        elif kind == "quotient":
            name = self._filt_ref(ln)
            ln.expect_op(",")
            args = (name, self._ideal_ref(ln))
        else:
            ln.error(f"unknown filtration kind {kind!r}", kind_tok)
        ln.expect_op(")")
        ln.expect_end()
        self.filtrations[tok[1]] = FiltrationDecl(tok[1], kind, args, checked)

    def task(self, ln: _Line):
        first = ln.expect_name("a task kind")
        kind = first[1]
        # task kinds may contain a dash: fc-sequence, cor43-scan
        while ln.peek()[:2] == ("op", "-"):
            ln.advance()
            kind += "-" + str(ln.advance()[1])
        if kind not in TASK_KINDS:
            ln.error(f"unknown task kind {kind!r}", first)
        args, options = [], []
        while not ln.at_end():
            tok = ln.expect_name("a name or key=value option")
            if ln.peek()[:2] == ("op", "="):
                ln.advance()
                val = ln.advance()
                if val[0] not in ("name", "int"):
                    ln.error("expected a name or integer value", val)
                if val[0] == "name" and val[1] not in self.ideals:
                    raise ScenarioNameError(val[1], f"undeclared ideal {val[1]!r}",
                                            val[2], val[3])
                options.append((tok[1], val[1]))
                continue
            if not args:
                if tok[1] not in self.filtrations:
                    raise ScenarioNameError(tok[1], f"undeclared filtration {tok[1]!r}",
                                            tok[2], tok[3])
            elif tok[1] not in self.ideals:
                raise ScenarioNameError(tok[1], f"undeclared ideal {tok[1]!r}", tok[2], tok[3])
            args.append(tok[1])
        if not args:
            ln.error("task needs a filtration", first)
        if len(args) > 2:
            ln.error("task takes a filtration and at most one ideal", first)
        self.tasks.append(TaskDecl(kind, tuple(args), tuple(sorted(options)), ln.lineno))


def parse_scenario(text: str) -> Scenario:
    p = _ScenarioParser()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        ln = _Line(body, lineno)
        head = ln.expect_name("ring, ideal, filtration or task")
        if head[1] == "ring":
            p.ring(ln)
            continue
        if p.variables is None:
            raise ParseError("the ring must be declared first", head[2], head[3])
        if head[1] == "ideal":
            p.ideal(ln)
        elif head[1] == "filtration":
            p.filtration(ln)
        elif head[1] == "task":
            p.task(ln)
        else:
            raise ParseError(f"unknown statement {head[1]!r}", head[2], head[3])
    if p.variables is None:
        raise ParseError("no ring declared", 1, 1)
    tasks = tuple(p.tasks)
    return Scenario(p.variables, p.relations, tuple(p.ideals.values()),
                    tuple(p.filtrations.values()), tasks,
                    tuple((t.kind, t.args, t.options) for t in tasks))


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _fmt_terms(t: Terms, names) -> str:
    return format_polynomial(dict(t), names)


def format_scenario(s: Scenario) -> str:
    """Canonical text; parse_scenario(format_scenario(s)) == s."""
    names = s.variables
    out = ["ring " + " ".join(names)
           + (" mod " + ", ".join(_fmt_terms(r, names) for r in s.relations)
              if s.relations else "")]
    for d in s.ideals:
        if d.is_expr:
            rhs = " + ".join(" * ".join(n if p == 1 else f"{n}^{p}" for n, p in prod)
                             for prod in d.expr)
        else:
            rhs = ", ".join(_fmt_terms(g, names) for g in d.gens)
        out.append(f"ideal {d.name} = {rhs}")
    for f in s.filtrations:
        if f.kind == "adic":
            rhs = f"adic({f.args[0]})"
        elif f.kind == "seeded":
            opts = "" if f.checked else ", check=false"
            rhs = f"seeded([{'; '.join(f.args[0])}], u={f.args[1]}{opts})"
        else:
            rhs = f"{f.kind}({f.args[0]}, {f.args[1]})"
        out.append(f"filtration {f.name} = {rhs}")
    for t in s.tasks:
        parts = ["task", t.kind, *t.args, *(f"{k}={v}" for k, v in t.options)]
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"
