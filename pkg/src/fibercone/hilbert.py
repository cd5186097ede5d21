"""Hilbert series of quotients by monomial ideals.

For a monomial ideal M in n variables the Hilbert series of k[x]/M is
K(t) / (1 - t)^n.  The numerator K is computed with the pivot recursion
K(M) = K(M + (p)) + t^deg(p) K(M : p) on a single-variable pivot p.
Polynomials in t are plain lists of integer coefficients, lowest degree first.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(a: list, b: list) -> list:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def psub(a: list, b: list) -> list:
    return padd(a, [-c for c in b])


def pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def shift(a: list, d: int) -> list:
    return [0] * d + list(a) if a else []


def minimalize(gens: Iterable[tuple]) -> tuple:
    """Minimal generators of a monomial ideal, in a canonical order."""
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out = []
    for m in gens:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return tuple(sorted(out))


@lru_cache(maxsize=1 << 16)
def _numerator(gens: tuple) -> tuple:
    if not gens:
        return (1,)
    if any(sum(m) == 0 for m in gens):
        return ()
    # pairwise coprime generators: product of (1 - t^deg)
    support = [0] * len(gens[0])
    coprime = True
    for m in gens:
        for i, e in enumerate(m):
            if e:
                if support[i]:
                    coprime = False
                    break
                support[i] = 1
        if not coprime:
            break
    if coprime:
        out = [1]
        for m in gens:
            out = pmul(out, [1] + [0] * (sum(m) - 1) + [-1])
        return tuple(out)
    # pivot on the variable occurring in the most non-pure-power generators
    counts = [0] * len(gens[0])
    for m in gens:
        if sum(1 for e in m if e) > 1:
            for i, e in enumerate(m):
                if e:
                    counts[i] += 1
    i = max(range(len(counts)), key=lambda j: (counts[j], -j))
    exps = sorted(m[i] for m in gens if m[i] and sum(1 for a in m if a) > 1)
    e = exps[len(exps) // 2]
    p = tuple(e if j == i else 0 for j in range(len(counts)))
    plus = minimalize(gens + (p,))
    colon = minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(m, p)) for m in gens))
    return tuple(padd(list(_numerator(plus)), shift(list(_numerator(colon)), e)))


def hilbert_numerator(gens: Iterable[tuple]) -> list:
    """Numerator K(t) of the Hilbert series of k[x]/(gens)."""
    return list(_numerator(minimalize(gens)))


def divide_one_minus_t(p: list) -> list | None:
    """Exact quotient p / (1 - t), or None when (1 - t) does not divide p."""
    if not p:
        return []
    if sum(p) != 0:
        return None
    # p = (1 - t) q  =>  q_k = sum_{j <= k} p_j
    q, acc = [], 0
    for c in p[:-1]:
        acc += c
        q.append(acc)
    return _trim(q)


def series_as_polynomial(numerator: list, nvars: int) -> list | None:
    """If K(t)/(1-t)^n is a polynomial return its coefficients, else None."""
    p = list(numerator)
    for _ in range(nvars):
        p = divide_one_minus_t(p)
        if p is None:
            return None
    return p


def expand_series(numerator: list, nvars: int, upto: int) -> list:
    """Coefficients 0..upto of K(t)/(1-t)^n."""
    coeffs = [numerator[i] if i < len(numerator) else 0 for i in range(upto + 1)]
    for _ in range(nvars):
        acc = 0
        for i in range(upto + 1):
            acc += coeffs[i]
            coeffs[i] = acc
    return coeffs


def count_standard_monomials(lead: Iterable[tuple], nvars: int, d: int) -> int:
    """Number of degree-``d`` monomials outside the monomial ideal ``lead``."""
    if d < 0:
        return 0
    return expand_series(hilbert_numerator(list(lead)), nvars, d)[d]
