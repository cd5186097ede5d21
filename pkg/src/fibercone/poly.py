"""Sparse multivariate polynomials over an exact field.

A polynomial is a mapping ``exponent tuple -> nonzero coefficient``.  The
mapping is canonical (no zero coefficients, no duplicate monomials), so two
polynomials compare equal exactly when they are equal as mathematical
objects.  Term order only matters for leading terms and printing.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import RingMismatchError
from .field import CoefficientField

Monomial = tuple  # tuple[int, ...]


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree ``d``, in lex-descending order."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _key_fn(kind: str, k: int):
    if kind == "degrevlex":
        def key(m):
            return (sum(m),) + tuple(-e for e in reversed(m))
    elif kind == "lex":
        def key(m):
            return m
    elif kind == "block":
        def key(m):
            a, b = m[:k], m[k:]
            return ((sum(a),) + tuple(-e for e in reversed(a))
                    + (sum(b),) + tuple(-e for e in reversed(b)))
    else:
        raise ValueError(f"unknown monomial order {kind!r}")
    return lru_cache(maxsize=1 << 18)(key)


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex, lex, or a block-elimination order.

    ``block`` compares the first ``k`` variables by degrevlex first and breaks
    ties with degrevlex on the remaining ones, so any monomial involving the
    first block beats every monomial free of it.
    """

    kind: str = "degrevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @classmethod
    def elimination(cls, k: int) -> MonomialOrder:
        return cls("block", k)

    def key(self, m: Monomial) -> tuple:
        """Flat integer tuple; larger tuple means larger monomial."""
        return _key_fn(self.kind, self.k)(m)

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


DEGREVLEX = MonomialOrder("degrevlex")


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring k[variables]."""

    variables: tuple
    field: CoefficientField = CoefficientField()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name_or_index) -> Polynomial:
        i = (self.variables.index(name_or_index)
             if isinstance(name_or_index, str) else name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps: Iterable[int], c=1) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_terms(self, terms: Mapping) -> Polynomial:
        """Build from a mapping whose coefficients are ints or Fractions."""
        out = {}
        for m, c in terms.items():
            c = self.field(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> Polynomial:
        from .parsing import parse_polynomial
        return self.from_terms(parse_polynomial(text, self.variables))

    def __call__(self, text: str) -> Polynomial:
        return self.parse(text)

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


def _add_into(acc: dict, terms: Mapping, field: CoefficientField, scale=1, shift=None):
    norm = field.norm
    for m, c in terms.items():
        if shift is not None:
            m = tuple(x + y for x, y in zip(m, shift))
        v = norm(acc.get(m, 0) + scale * c)
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


class Polynomial:
    """Immutable sparse polynomial; equality is mathematical equality."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX):
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def homogeneous_component(self, d: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    # -- arithmetic ------------------------------------------------------
    def _check(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._check(other)
        return Polynomial(self.ring, _add_into(dict(self.terms), other.terms, self.ring.field))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._check(other)
        return Polynomial(self.ring, _add_into(dict(self.terms), other.terms,
                                               self.ring.field, scale=-1))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Polynomial:
        field = self.ring.field
        c = field(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.norm(v * c) for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c=1) -> Polynomial:
        field = self.ring.field
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(m, mono)): field.norm(v * c)
                                      for m, v in self.terms.items()})

    def __mul__(self, other):
        other = self._check(other)
        if len(other.terms) < len(self.terms):
            small, big = other, self
        else:
            small, big = self, other
        acc: dict = {}
        for m, c in small.terms.items():
            _add_into(acc, big.terms, self.ring.field, scale=c, shift=m)
        return Polynomial(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- printing --------------------------------------------------------
    def __str__(self):
        return format_polynomial(self.terms, self.ring.variables, self.ring.field)

    def __repr__(self):
        return f"Polynomial({self})"


def format_monomial(m: Monomial, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(terms: Mapping, names, field: CoefficientField | None = None,
                      order: MonomialOrder = DEGREVLEX) -> str:
    if not terms:
        return "0"
    out = []
    for m, c in sorted(terms.items(), key=lambda t: order.key(t[0]), reverse=True):
        if field is not None:
            c = field.to_signed(c)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = format_monomial(m, names)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s
