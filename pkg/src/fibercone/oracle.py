"""Brute-force degreewise linear algebra, independent of the Groebner engine.

The degree-d piece of (gens) + (relations) is spanned by all products
monomial * generator of degree d; dimensions and memberships are read off
from ranks of those coefficient matrices.  Exponential in the degree and
meant only for verification at desk scale.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .poly import Polynomial, monomials_of_degree


def _rank_mod_p(rows: list, p: int) -> int:
    if not rows:
        return 0
    M = np.array(rows, dtype=np.int64) % p
    nrows, ncols = M.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(M[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, col]), -1, p)
        M[rank] = (M[rank] * inv) % p
        below = np.nonzero(M[rank + 1:, col])[0] + rank + 1
        if below.size:
            M[below] = (M[below] - np.outer(M[below, col], M[rank])) % p
        rank += 1
    return rank


def _rank_exact(rows: list) -> int:
    M = [[Fraction(c) for c in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pr = M[rank]
        for i in range(rank + 1, len(M)):
            if M[i][col] != 0:
                f = M[i][col] / pr[col]
                M[i] = [a - f * b for a, b in zip(M[i], pr)]
        rank += 1
    return rank


def _rank(rows: list, field) -> int:
    if field.p is None:
        return _rank_exact(rows)
    return _rank_mod_p(rows, field.p)


def _multiples(polys: Sequence[Polynomial], d: int, nvars: int, index: dict) -> list:
    rows = []
    for g in polys:
        dg = g.degree()
        if dg < 0 or dg > d:
            continue
        for m in monomials_of_degree(nvars, d - dg):
            row = [0] * len(index)
            for gm, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(gm, m))]] = c
            rows.append(row)
    return rows


def _require_homogeneous(polys: Sequence[Polynomial]) -> list:
    for f in polys:
        if not f.is_homogeneous():
            raise ValueError(f"oracle inputs must be homogeneous, got {f}")
    return list(polys)


def oracle_graded_dim(gens: Sequence[Polynomial], relations: Sequence[Polynomial], d: int) -> int:
    """dim_k of the degree-d piece of ((gens) + (relations)) / (relations)."""
    polys = list(gens) + list(relations)
    if not polys or d < 0:
        return 0
    ring = polys[0].ring
    basis = monomials_of_degree(ring.nvars, d)
    index = {m: i for i, m in enumerate(basis)}
    rel_rows = _multiples(_require_homogeneous(relations), d, ring.nvars, index)
    all_rows = rel_rows + _multiples(_require_homogeneous(gens), d, ring.nvars, index)
    return _rank(all_rows, ring.field) - _rank(rel_rows, ring.field)


def oracle_membership(f: Polynomial, gens: Sequence[Polynomial],
                      relations: Sequence[Polynomial] = ()) -> bool:
    """Is the homogeneous ``f`` in (gens) + (relations)?  One linear solve in deg f."""
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        raise ValueError("oracle_membership needs a homogeneous polynomial")
    d = f.degree()
    ring = f.ring
    basis = monomials_of_degree(ring.nvars, d)
    index = {m: i for i, m in enumerate(basis)}
    rows = _multiples(_require_homogeneous(list(gens) + list(relations)), d, ring.nvars, index)
    target = [0] * len(basis)
    for m, c in f.terms.items():
        target[index[m]] = c
    return _rank(rows + [target], ring.field) == _rank(rows, ring.field)


def oracle_quotient_dim(bigger: Sequence[Polynomial], smaller: Sequence[Polynomial],
                        relations: Sequence[Polynomial], upto: int) -> int:
    """Sum over d <= upto of dim(bigger)_d - dim(smaller)_d modulo relations."""
    return sum(oracle_graded_dim(bigger, relations, d) - oracle_graded_dim(smaller, relations, d)
               for d in range(upto + 1))
