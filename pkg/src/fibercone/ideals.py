"""Homogeneous ideals in graded quotient rings A = k[x]/a.

Every ideal is stored through its preimage in the polynomial ring: the
presentation is the reduced Groebner basis of (generators) + a.  All
operations are therefore preimage operations on polynomial ideals, and
lengths of finite-length graded modules are k-dimensions counted degreewise
through Hilbert series of leading-term ideals.
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable

from .errors import (IterationCapError, NotFiniteLengthError, PreconditionError,
                     RingMismatchError)
from .field import CoefficientField
from .groebner import GroebnerBasis, groebner_raw, reduce_raw
from .hilbert import (count_standard_monomials, expand_series, hilbert_numerator,
                      psub, series_as_polynomial)
from .poly import DEGREVLEX, MonomialOrder, PolyRing, Polynomial, monomials_of_degree

SATURATION_CAP = 64


@lru_cache(maxsize=4096)
def _presentation(poly_ring: PolyRing, relations: tuple, gens: tuple):
    """Reduced GB of gens + relations, and the flags of surviving gens."""
    inputs = [r.terms for r in relations] + [g.terms for g in gens]
    ranks = [1] * len(relations) + [2] * len(gens)
    raw, kept = groebner_raw(inputs, poly_ring.field, DEGREVLEX, (1,) * poly_ring.nvars,
                             ranks)
    gb = GroebnerBasis._from_raw(poly_ring, DEGREVLEX, raw)
    return gb, tuple(g for g, k in zip(gens, kept[len(relations):]) if k)


class AmbientRing:
    """Graded ring k[variables] / relations with maximal ideal (variables)."""

    def __init__(self, variables, field: CoefficientField | None = None,
                 relations: Iterable = ()):
        self.poly = PolyRing(tuple(variables), field or CoefficientField())
        rels = [self._coerce(r) for r in relations]
        for r in rels:
            if not r.is_homogeneous():
                raise PreconditionError(f"relation {r} is not homogeneous")
        gb, _ = _presentation(self.poly, (), tuple(r for r in rels if r))
        self.relations: GroebnerBasis = gb

    @classmethod
    def _from_parts(cls, poly: PolyRing, relations: GroebnerBasis) -> AmbientRing:
        obj = cls.__new__(cls)
        obj.poly = poly
        obj.relations = relations
        return obj

    # -- coercion --------------------------------------------------------
    def _coerce(self, f) -> Polynomial:
        if isinstance(f, Polynomial):
            if f.ring != self.poly:
                raise RingMismatchError(f"{f.ring} vs {self.poly}")
            return f
        if isinstance(f, str):
            return self.poly.parse(f)
        return self.poly.constant(f)

    def element(self, f) -> Polynomial:
        """Canonical representative of the image of ``f`` in this ring."""
        f = self._coerce(f)
        return Polynomial(self.poly, reduce_raw(f.terms, self.relations.raw,
                                                self.poly.field, DEGREVLEX))

    # -- structure -------------------------------------------------------
    @property
    def variables(self) -> tuple:
        return self.poly.variables

    @property
    def field(self) -> CoefficientField:
        return self.poly.field

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    def gens(self) -> tuple:
        return self.poly.gens()

    def ideal(self, *gens) -> Ideal:
        if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
            gens = gens[0]
        return Ideal(self, [self._coerce(g) for g in gens])

    @cached_property
    def max_ideal(self) -> Ideal:
        return Ideal(self, self.poly.gens())

    @cached_property
    def zero_ideal(self) -> Ideal:
        return Ideal(self, ())

    @cached_property
    def unit_ideal(self) -> Ideal:
        return Ideal(self, (self.poly.one(),))

    def quotient(self, X: Ideal) -> AmbientRing:
        """The ring A/X (relations become the preimage of X)."""
        if X.ring != self:
            raise RingMismatchError("ideal lives in a different ring")
        return AmbientRing._from_parts(self.poly, X.presentation)

    def is_polynomial_ring(self) -> bool:
        return self.relations.is_zero()

    def __eq__(self, other):
        if not isinstance(other, AmbientRing):
            return NotImplemented
        return self.poly == other.poly and self.relations == other.relations

    def __hash__(self):
        return hash((self.poly, self.relations))

    def __str__(self):
        if self.relations.is_zero():
            return str(self.poly)
        return f"{self.poly}/({', '.join(str(r) for r in self.relations)})"

    __repr__ = __str__


class Ideal:
    """Homogeneous ideal of an :class:`AmbientRing`; immutable.

    Equality is equality of presentations, i.e. of the ideals themselves.
    """

    def __init__(self, ring: AmbientRing, gens: Iterable[Polynomial]):
        self.ring = ring
        out = []
        for g in gens:
            g = ring._coerce(g)
            if not g:
                continue
            if not g.is_homogeneous():
                raise PreconditionError(f"generator {g} is not homogeneous")
            out.append(g)
        self.gens = tuple(out)

    @cached_property
    def _data(self):
        return _presentation(self.ring.poly, self.ring.relations.elements, self.gens)

    @property
    def presentation(self) -> GroebnerBasis:
        return self._data[0]

    @property
    def mingens(self) -> tuple:
        """A minimal homogeneous generating set modulo the ring relations."""
        return self._data[1]

    @cached_property
    def hilbert_numerator(self) -> list:
        return hilbert_numerator(self.presentation.leading_monomials())

    def _same(self, other: Ideal):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            raise RingMismatchError("ideals live in different rings")

    def is_unit(self) -> bool:
        return self.presentation.is_unit()

    def is_zero(self) -> bool:
        return not self.mingens

    def max_degree(self) -> int:
        return max((g.degree() for g in self.mingens), default=0)

    def is_equigenerated(self) -> bool:
        return len({g.degree() for g in self.mingens}) <= 1

    def __contains__(self, f) -> bool:
        f = self.ring._coerce(f)
        return not reduce_raw(f.terms, self.presentation.raw, f.ring.field, DEGREVLEX)

    def __le__(self, other: Ideal) -> bool:
        return contains(other, self)

    def __ge__(self, other: Ideal) -> bool:
        return contains(self, other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.presentation == other.presentation

    def __hash__(self):
        return hash((self.ring, self.presentation))

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_arith("sum", self, other)

    def __mul__(self, other) -> Ideal:
        if isinstance(other, Polynomial):
            other = Ideal(self.ring, [other])
        return ideal_arith("product", self, other)

    def __pow__(self, k: int) -> Ideal:
        return ideal_arith("power", self, k)

    def __and__(self, other: Ideal) -> Ideal:
        return intersect(self, other)

    def __str__(self):
        gens = self.mingens if "_data" in self.__dict__ else self.gens
        return "(" + ", ".join(str(g) for g in gens) + ")" if gens else "(0)"

    def __repr__(self):
        return f"Ideal{self}"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def ideal_arith(op: str, X: Ideal, Y) -> Ideal:
    """``sum``, ``product`` or ``power`` (with ``Y`` an exponent)."""
    if op == "power":
        k = int(Y)
        if k < 0:
            raise ValueError("negative exponent")
        out = X.ring.unit_ideal
        for _ in range(k):
            out = ideal_arith("product", out, X)
        return out
    X._same(Y)
    if op == "sum":
        return Ideal(X.ring, X.gens + Y.gens)
    if op == "product":
        if X.is_unit():
            return Y
        if Y.is_unit():
            return X
        return Ideal(X.ring, [a * b for a in X.mingens for b in Y.mingens])
    raise ValueError(f"unknown ideal operation {op!r}")


def _intersect_raw(F1: list, F2: list, poly: PolyRing) -> list:
    """Generators of (F1) cap (F2) in k[x] via t*F1 + (1-t)*F2, eliminating t."""
    n = poly.nvars
    field = poly.field
    inputs = []
    for f in F1:
        inputs.append({(1,) + m: c for m, c in f.items()})
    for g in F2:
        h = {}
        for m, c in g.items():
            h[(0,) + m] = c
            h[(1,) + m] = field.norm(-c)
        inputs.append(h)
    # t has weight 0 so every input is homogeneous for the weighted grading
    raw, _ = groebner_raw(inputs, field, MonomialOrder.elimination(1), (0,) + (1,) * n)
    return [{m[1:]: c for m, c in t.items()} for lm, t in raw if lm[0] == 0]


def intersect(X: Ideal, Y: Ideal) -> Ideal:
    X._same(Y)
    if X.is_unit() or contains(X, Y):
        return Y
    if Y.is_unit() or contains(Y, X):
        return X
    rel = [r.terms for r in X.ring.relations]
    out = _intersect_raw([g.terms for g in X.mingens] + rel,
                         [g.terms for g in Y.mingens] + rel, X.ring.poly)
    return Ideal(X.ring, [Polynomial(X.ring.poly, t) for t in out])


def _divide_exact(f: dict, g: Polynomial) -> dict:
    field = g.ring.field
    lm = g.leading_monomial()
    inv = field.inv(g.terms[lm])
    monic = {m: field.norm(c * inv) for m, c in g.terms.items()}
    q = {}
    r = dict(f)
    while r:
        m = max(r, key=DEGREVLEX.key)
        c = r[m]
        if not all(a <= b for a, b in zip(lm, m)):
            raise ArithmeticError("inexact division")
        s = tuple(b - a for a, b in zip(lm, m))
        q[s] = field.norm(q.get(s, 0) + c * inv)
        for gm, gc in monic.items():
            t = tuple(x + y for x, y in zip(gm, s))
            v = field.norm(r.get(t, 0) - c * gc)
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return {m: c for m, c in q.items() if c}


def colon_element(X: Ideal, g: Polynomial) -> Ideal:
    """X : (g) = ((X + a) cap (g)) / g."""
    g = X.ring._coerce(g)
    if g in X:
        return X.ring.unit_ideal
    rel = [r.terms for r in X.ring.relations]
    inter = _intersect_raw([h.terms for h in X.mingens] + rel, [g.terms], X.ring.poly)
    return Ideal(X.ring, [Polynomial(X.ring.poly, _divide_exact(t, g)) for t in inter])


def colon(X: Ideal, Y: Ideal) -> Ideal:
    """{f : f Y in X}, as an intersection of element colons."""
    X._same(Y)
    if Y.is_unit():
        return X
    if X.is_unit() or Y.is_zero() or contains(X, Y):
        return X.ring.unit_ideal
    out = None
    for g in Y.mingens:
        q = colon_element(X, g)
        out = q if out is None else intersect(out, q)
    return out


def saturate(X: Ideal, Y: Ideal, cap: int = SATURATION_CAP) -> tuple:
    """``(X : Y^infinity, number of colon steps)``."""
    X._same(Y)
    cur = X
    for step in range(1, cap + 1):
        nxt = colon(cur, Y)
        if nxt == cur:
            return cur, step
        cur = nxt
    raise IterationCapError(f"saturation did not stabilise within {cap} steps")


def saturation(X: Ideal, Y: Ideal) -> Ideal:
    return saturate(X, Y)[0]


def contains(X: Ideal, Y: Ideal) -> bool:
    """True iff Y is a subset of X."""
    X._same(Y)
    raw = X.presentation.raw
    field = X.ring.field
    return all(not reduce_raw(g.terms, raw, field, DEGREVLEX) for g in Y.gens)


def hilbert_fn(X: Ideal, d: int) -> int:
    """dim_k of the degree-d piece of A/X (standard monomials of degree d)."""
    return count_standard_monomials(X.presentation.leading_monomials(), X.ring.nvars, d)


def hilbert_values(X: Ideal, upto: int) -> list:
    return expand_series(X.hilbert_numerator, X.ring.nvars, upto)


def graded_piece_dim(X: Ideal, d: int) -> int:
    """dim_k of the degree-d piece of X itself (inside A)."""
    return hilbert_fn(X.ring.zero_ideal, d) - hilbert_fn(X, d)


def quotient_dims(X: Ideal, Y: Ideal) -> list:
    """Degreewise dimensions of X/Y (Y contained in X, finite length)."""
    if not contains(X, Y):
        raise PreconditionError("finite_quotient_dim needs Y contained in X")
    diff = psub(Y.hilbert_numerator, X.hilbert_numerator)
    dims = series_as_polynomial(diff, X.ring.nvars)
    if dims is None:
        raise NotFiniteLengthError(
            "not finite length: (Y : X) is not primary to the maximal ideal, "
            "so X/Y has nonzero graded pieces in infinitely many degrees")
    return dims


def finite_quotient_dim(X: Ideal, Y: Ideal) -> int:
    """Length of X/Y over the graded-local ring, i.e. dim_k(X/Y)."""
    return sum(quotient_dims(X, Y))


def length(X: Ideal) -> int:
    """Length of A/X."""
    return finite_quotient_dim(X.ring.unit_ideal, X)


def primary_to_max(J: Ideal) -> tuple:
    """``(True, N)`` with N least such that m^N lies in J, else ``(False, None)``."""
    if series_as_polynomial(J.hilbert_numerator, J.ring.nvars) is None:
        return False, None
    n = J.ring.nvars
    N = 0
    while True:
        if all(J.ring.poly.monomial(m) in J for m in monomials_of_degree(n, N)):
            return True, N
        N += 1


def length_bound(X: Ideal, Y: Ideal) -> int:
    """Degree beyond which (X/Y) vanishes, certified through the colon (Y : X).

    If m^N lies in (Y : X) then every element of X of degree
    > N - 1 + max generator degree of X lies in Y.
    """
    ok, N = primary_to_max(colon(Y, X))
    if not ok:
        raise NotFiniteLengthError("(Y : X) is not primary to the maximal ideal")
    return N - 1 + X.max_degree()
