"""Normal forms, reduced Groebner bases (Buchberger) and elimination.

Pairs are selected by the normal strategy: smallest (weighted) lcm degree
first, ties broken by the monomial order on the lcm.  Input polynomials are
fed into the same queue at their degree, after the pairs of that degree, so
for homogeneous input the inputs that survive reduction form a minimal
generating set.  Redundant pairs are pruned with the Gebauer-Moeller
criteria.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import RingMismatchError
from .field import CoefficientField
from .poly import (DEGREVLEX, MonomialOrder, PolyRing, Polynomial, mono_divides,
                   mono_lcm)


# ---------------------------------------------------------------------------
# raw layer: polynomials are dicts {exponent tuple: coefficient}
# ---------------------------------------------------------------------------

def _neg(key):
    return tuple(-x for x in key)


def _monic(f: dict, lm, field: CoefficientField) -> dict:
    c = f[lm]
    if c == 1:
        return f
    inv = field.inv(c)
    norm = field.norm
    return {m: norm(v * inv) for m, v in f.items()}


def reduce_raw(f: dict, basis: Sequence, field: CoefficientField, order: MonomialOrder,
               full: bool = True) -> dict:
    """Remainder of ``f`` modulo ``basis``.

    ``basis`` is a sequence of ``(leading monomial, monic terms)``; the first
    divisor in sequence order is always used, which keeps results
    deterministic.  With ``full=False`` only the leading term is reduced.
    """
    if not f or not basis:
        return dict(f)
    key = order.key
    norm = field.norm
    f = dict(f)
    heap = [(_neg(key(m)), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.get(m)
        if c is None:
            continue
        for lm, g in basis:
            if all(a <= b for a, b in zip(lm, m)):
                shift = tuple(b - a for a, b in zip(lm, m))
                for gm, gc in g.items():
                    t = tuple(x + y for x, y in zip(gm, shift))
                    old = f.get(t)
                    v = norm((0 if old is None else old) - c * gc)
                    if v:
                        f[t] = v
                        if old is None:
                            heapq.heappush(heap, (_neg(key(t)), t))
                    elif old is not None:
                        del f[t]
                break
        else:
            rem[m] = c
            del f[m]
            if not full:
                rem.update(f)
                return rem
    return rem


def _wdeg(m, weights) -> int:
    return sum(a * w for a, w in zip(m, weights))


class _Buchberger:
    def __init__(self, field, order, weights):
        self.field = field
        self.order = order
        self.weights = weights
        self.polys: list = []   # (lm, monic terms)
        self.active: list = []  # indices into polys, insertion order
        self.pairs: dict = {}   # (i, j) -> lcm
        self.queue: list = []
        self.seq = 0

    def basis(self):
        return [self.polys[i] for i in self.active]

    def push(self, wdeg, rank, key, payload):
        heapq.heappush(self.queue, (wdeg, rank, key, self.seq, payload))
        self.seq += 1

    def add(self, h: dict):
        lm = max(h, key=self.order.key)
        h = _monic(h, lm, self.field)
        hi = len(self.polys)
        self.polys.append((lm, h))
        lms = self.polys
        cands = [(g, mono_lcm(lms[g][0], lm)) for g in self.active]
        kept = []
        while cands:
            g1, l1 = cands.pop(0)
            coprime = all(a == 0 or b == 0 for a, b in zip(lms[g1][0], lm))
            if coprime or not (any(mono_divides(l2, l1) for _, l2 in cands)
                               or any(mono_divides(l2, l1) for _, l2 in kept)):
                kept.append((g1, l1))
        new_pairs = [(g, l) for g, l in kept
                     if not all(a == 0 or b == 0 for a, b in zip(lms[g][0], lm))]
        for (i, j), l in list(self.pairs.items()):
            if (mono_divides(lm, l) and mono_lcm(lms[i][0], lm) != l
                    and mono_lcm(lms[j][0], lm) != l):
                del self.pairs[(i, j)]
        for g, l in new_pairs:
            self.pairs[(g, hi)] = l
            self.push(_wdeg(l, self.weights), 0, self.order.key(l), (g, hi))
        self.active = [g for g in self.active if not mono_divides(lm, lms[g][0])] + [hi]

    def spoly(self, i, j, l) -> dict:
        (li, fi), (lj, fj) = self.polys[i], self.polys[j]
        norm = self.field.norm
        si = tuple(a - b for a, b in zip(l, li))
        sj = tuple(a - b for a, b in zip(l, lj))
        out = {}
        for m, c in fi.items():
            out[tuple(x + y for x, y in zip(m, si))] = c
        for m, c in fj.items():
            t = tuple(x + y for x, y in zip(m, sj))
            v = norm(out.get(t, 0) - c)
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return out

    def run(self, inputs: Sequence) -> list:
        """Process ``(terms, rank)`` inputs; return flags of surviving inputs."""
        kept = [False] * len(inputs)
        for idx, (f, rank) in enumerate(inputs):
            if f:
                w = max(_wdeg(m, self.weights) for m in f)
                self.push(w, rank, self.order.key(max(f, key=self.order.key)), ("in", idx))
        while self.queue:
            _, _, _, _, payload = heapq.heappop(self.queue)
            if payload[0] == "in":
                idx = payload[1]
                h = reduce_raw(inputs[idx][0], self.basis(), self.field, self.order)
                if h:
                    kept[idx] = True
                    self.add(h)
            else:
                l = self.pairs.pop(payload, None)
                if l is None:
                    continue
                h = reduce_raw(self.spoly(payload[0], payload[1], l), self.basis(),
                               self.field, self.order)
                if h:
                    self.add(h)
        return kept

    def reduced(self) -> list:
        basis = self.basis()
        out = []
        for k, (lm, g) in enumerate(basis):
            others = basis[:k] + basis[k + 1:]
            tail = {m: c for m, c in g.items() if m != lm}
            r = reduce_raw(tail, others, self.field, self.order)
            r[lm] = 1
            out.append((lm, r))
        out.sort(key=lambda t: self.order.key(t[0]), reverse=True)
        return out


def groebner_raw(inputs: Sequence, field: CoefficientField, order: MonomialOrder,
                 weights: Sequence[int], ranks: Sequence[int] | None = None):
    """Reduced Groebner basis of raw polynomials.

    Returns ``(basis, kept)`` where ``basis`` is a list of ``(lm, monic
    terms)`` sorted by descending leading monomial and ``kept[i]`` tells
    whether input ``i`` was not already in the ideal of earlier material.
    """
    ranks = ranks or [2] * len(inputs)
    bb = _Buchberger(field, order, tuple(weights))
    kept = bb.run([(dict(f), r) for f, r in zip(inputs, ranks)])
    return bb.reduced(), kept


# ---------------------------------------------------------------------------
# public layer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis sorted by descending leading monomial."""

    ring: PolyRing
    order: MonomialOrder
    elements: tuple

    @classmethod
    def _from_raw(cls, ring, order, raw) -> GroebnerBasis:
        return cls(ring, order, tuple(Polynomial(ring, t) for _, t in raw))

    @property
    def raw(self) -> list:
        cached = self.__dict__.get("_raw")
        if cached is None:
            cached = [(e.leading_monomial(self.order), e.terms) for e in self.elements]
            object.__setattr__(self, "_raw", cached)
        return cached

    def leading_monomials(self) -> list:
        return [lm for lm, _ in self.raw]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero(self) -> bool:
        return not self.elements

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def __contains__(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "{" + ", ".join(str(e) for e in self.elements) + "}"


def _same_ring(polys: Iterable[Polynomial], ring: PolyRing | None = None) -> PolyRing:
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            raise RingMismatchError(f"{f.ring} vs {ring}")
    if ring is None:
        raise ValueError("cannot infer the ring of an empty generator set")
    return ring


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo the reduced basis ``G``."""
    if f.ring != G.ring:
        raise RingMismatchError(f"{f.ring} vs {G.ring}")
    return Polynomial(f.ring, reduce_raw(f.terms, G.raw, f.ring.field, G.order))


def groebner_basis(gens: Iterable[Polynomial], order: MonomialOrder = DEGREVLEX,
                   ring: PolyRing | None = None) -> GroebnerBasis:
    gens = [g for g in gens]
    ring = _same_ring(gens, ring)
    raw, _ = groebner_raw([g.terms for g in gens if g], ring.field, order,
                          (1,) * ring.nvars)
    return GroebnerBasis._from_raw(ring, order, raw)


def eliminate(gens: Iterable[Polynomial], drop: Iterable, ring: PolyRing | None = None) -> list:
    """Generators of the ideal intersected with the subring of the kept variables.

    ``drop`` holds variable names or indices.  The variables are permuted so
    the dropped block comes first and a block-elimination order is used.
    """
    gens = [g for g in gens if g]
    ring = _same_ring(gens, ring) if gens else ring
    if ring is None:
        return []
    drop_idx = sorted({ring.variables.index(v) if isinstance(v, str) else v for v in drop})
    keep_idx = [i for i in range(ring.nvars) if i not in drop_idx]
    perm = drop_idx + keep_idx
    k = len(drop_idx)

    def fwd(m):
        return tuple(m[i] for i in perm)

    def back(m):
        out = [0] * ring.nvars
        for pos, i in enumerate(perm):
            out[i] = m[pos]
        return tuple(out)

    raw, _ = groebner_raw([{fwd(m): c for m, c in g.terms.items()} for g in gens],
                          ring.field, MonomialOrder.elimination(k), (1,) * ring.nvars)
    out = []
    for lm, t in raw:
        if not any(lm[:k]):
            out.append(Polynomial(ring, {back(m): c for m, c in t.items()}))
    return out
