"""Fiber-cone quantities recomputed with the dense oracle only.

Generators of products are formed by plain polynomial multiplication, and
lengths are sums of degreewise oracle dimensions, so nothing here touches
Groebner bases.
"""
from __future__ import annotations

from itertools import product

from fibercone.oracle import oracle_graded_dim


def products(*gen_lists):
    return [_mul(combo) for combo in product(*gen_lists)]


def _mul(polys):
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


def power(gens, n, one):
    out = [one]
    for _ in range(n):
        out = products(out, gens)
    return out


def quotient_length(big, small, relations, upto):
    """sum_d dim(big)_d - dim(small)_d for d <= upto; the tail must vanish."""
    dims = [oracle_graded_dim(big, relations, d) - oracle_graded_dim(small, relations, d)
            for d in range(upto + 1)]
    assert dims[-2:] == [0, 0], "degree bound too small for a finite-length quotient"
    return sum(dims)


def fiber_value(I, J, n, relations, one, slack=4):
    In = power(I, n, one)
    top = max(g.degree() for g in In) + max(g.degree() for g in J) + slack
    return quotient_length(In, products(J, In), relations, top)


def parameter_length(I, J, jj, r, relations, one, slack=4):
    """length(A/J) + sum_{1<=n<=r} length I_n / (jj I_(n-1) + J I_n)."""
    total = quotient_length([one], J, relations, max(g.degree() for g in J) + slack + 2)
    for n in range(1, r + 1):
        In = power(I, n, one)
        small = products(jj, power(I, n - 1, one)) + products(J, In)
        top = max(g.degree() for g in In) + max(g.degree() for g in J) + slack
        total += quotient_length(In, small, relations, top)
    return total
