"""Good filtrations {I_n} given adically or by a finite seed.

A seeded filtration stores I_1, ..., I_u and continues with the tail law
I_n = I_1^(n-u) I_u for n > u.  Terms are memoised per filtration.
"""
from __future__ import annotations

import math

from .errors import FiltrationError, PreconditionError, RingMismatchError
from .ideals import AmbientRing, Ideal, contains, saturate


class Filtration:
    def __init__(self, ring: AmbientRing, kind: str, seeds: tuple, stability_index: int,
                 label: str = ""):
        self.ring = ring
        self.kind = kind
        self.seeds = tuple(seeds)
        self.stability_index = stability_index
        self.label = label
        self._terms: dict = {}
        self.memo: dict = {}  # derived invariants, keyed by name and parameters

    @property
    def base(self) -> Ideal:
        """I_1."""
        return self.term(1)

    def term(self, n: int) -> Ideal:
        if n < -1:
            raise ValueError(f"filtration index {n} < -1")
        if n == -1:
            return self.ring.zero_ideal
        if n == 0:
            return self.ring.unit_ideal
        cached = self._terms.get(n)
        if cached is not None:
            return cached
        if self.kind == "adic":
            out = self.seeds[0] if n == 1 else self.term(n - 1) * self.seeds[0]
        elif n <= self.stability_index:
            out = self.seeds[n - 1]
        else:
            out = self.term(n - 1) * self.seeds[0]
        self._terms[n] = out
        return out

    def __str__(self):
        if self.label:
            return self.label
        if self.kind == "adic":
            return f"adic{self.seeds[0]}"
        return "seeded[" + "; ".join(str(s) for s in self.seeds) + f"], u={self.stability_index}"

    __repr__ = __str__


def filtration_adic(I: Ideal, label: str = "") -> Filtration:
    if I.is_unit():
        raise PreconditionError("adic filtration of the unit ideal")
    return Filtration(I.ring, "adic", (I,), 0, label)


def filtration_seeded(seeds, u: int | None = None, label: str = "") -> Filtration:
    """Validated seeded filtration with terms I_1..I_u = seeds."""
    seeds = tuple(seeds)
    u = len(seeds) if u is None else u
    if u < 1 or len(seeds) != u:
        raise FiltrationError(f"expected {u} seeds indexed 1..u, got {len(seeds)}")
    ring = seeds[0].ring
    for s in seeds:
        if s.ring != ring:
            raise RingMismatchError("seeds live in different rings")
    if seeds[0].is_unit():
        raise FiltrationError("not a filtration: I_1 is the unit ideal")
    F = Filtration(ring, "seeded", seeds, u, label)
    for n in range(1, u):
        if not contains(F.term(n), F.term(n + 1)):
            raise FiltrationError(f"not a filtration: I_{n + 1} is not contained in I_{n}",
                                  witness=(n, n + 1))
    for total in range(2, 2 * u + 1):
        for m in range(1, total // 2 + 1):
            n = total - m
            if not contains(F.term(total), F.term(m) * F.term(n)):
                raise FiltrationError(
                    f"not a filtration: I_{m} * I_{n} is not contained in I_{total}",
                    witness=(m, n))
    return F


def filtration_term(F: Filtration, n: int) -> Ideal:
    return F.term(n)


def filtration_quotient(F: Filtration, X: Ideal, label: str = "") -> Filtration:
    """F/X over the ring A/X, terms (I_n + X)/X."""
    if X.ring != F.ring:
        raise RingMismatchError("ideal lives in a different ring")
    if X.is_zero():
        return F
    B = F.ring.quotient(X)
    seeds = tuple(Ideal(B, s.gens) for s in F.seeds)
    return Filtration(B, F.kind, seeds, F.stability_index, label)


def filtration_rescale(F: Filtration, T: int, label: str = "") -> Filtration:
    """F^(T) = {I_(T n)} as a seeded filtration."""
    if T < 1:
        raise ValueError("rescaling factor must be >= 1")
    if T == 1:
        return F
    u = math.ceil((F.stability_index + T) / T)
    G = filtration_seeded([F.term(T * n) for n in range(1, u + 1)], u, label)
    # the tail law of the rescaled filtration must reproduce I_(T n) directly
    if G.term(u + 1) != F.term(T * (u + 1)):
        raise FiltrationError(f"rescaled tail law fails at n = {u + 1}")
    return G


def is_nilpotent(F: Filtration) -> tuple:
    """``(True, N)`` with N least such that I_1^N = 0, else ``(False, None)``."""
    sat, _ = saturate(F.ring.zero_ideal, F.base)
    if not sat.is_unit():
        return False, None
    power = F.base
    N = 1
    while not power.is_zero():
        power = power * F.base
        N += 1
    return True, N
