"""Fiber Hilbert functions, analytic spread, multiplicity and reductions.

The fiber Hilbert function of a filtration F = {I_n} with respect to an
m-primary J is h_J(n) = length(I_n / J I_n).  For large n it agrees with a
polynomial of degree l - 1 where l is the analytic spread; its normalised
leading coefficient is the multiplicity.  No effective bound for "large n"
is known, so polynomial behaviour is detected on adaptive windows and
validated on extra points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, WindowExhaustedError
from .filtration import Filtration, is_nilpotent
from .ideals import Ideal, contains, finite_quotient_dim, intersect, primary_to_max
from .parallel import pmap
from .poly import Polynomial

N_MAX = 40
FLAT_POINTS = 3  # trailing zeros required of the vanishing difference


# ---------------------------------------------------------------------------
# fiber Hilbert function
# ---------------------------------------------------------------------------

def _require_primary(J: Ideal) -> None:
    if J.is_unit() or not primary_to_max(J)[0]:
        raise PreconditionError(f"J = {J} is not primary to the maximal ideal")


def fiber_hilbert_value(F: Filtration, J: Ideal, n: int) -> int:
    """h_J(n) = dim_k I_n / J I_n."""
    if n < 0:
        raise ValueError("fiber Hilbert function is defined for n >= 0")
    key = ("h", J, n)
    cached = F.memo.get(key)
    if cached is None:
        _require_primary(J)
        In = F.term(n)
        cached = finite_quotient_dim(In, J * In)
        F.memo[key] = cached
    return cached


def fiber_hilbert_values(F: Filtration, J: Ideal, ns: Sequence[int]) -> list:
    _require_primary(J)
    return pmap(lambda n: fiber_hilbert_value(F, J, n), ns)


def differences(values: Sequence[int], order: int) -> list:
    out = list(values)
    for _ in range(order):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


def detect_degree(values: Sequence[int]) -> int | None:
    """Least d with Delta^(d+1) zero and Delta^d constant nonzero at the tail.

    The vanishing difference must be seen on FLAT_POINTS consecutive
    trailing entries; None if no order qualifies inside the data.
    """
    for d in range(len(values)):
        nxt = differences(values, d + 1)
        if len(nxt) < FLAT_POINTS:
            return None
        if any(nxt[-FLAT_POINTS:]):
            continue
        if differences(values, d)[-1] != 0:
            return d
    return None


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list:
    """Coefficients (lowest first) of the polynomial through the points."""
    coeffs = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    return coeffs


def evaluate(coeffs: Sequence[Fraction], n: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


# ---------------------------------------------------------------------------
# analytic spread
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpreadCertificate:
    spread: int
    nilpotent: bool
    window: tuple = ()       # (first n, last n) of the scanned window
    values: tuple = ()       # h_m(n) on the window


def spread_certificate(F: Filtration, n_max: int = N_MAX, width: int | None = None
                       ) -> SpreadCertificate:
    key = ("spread", n_max, width)
    cached = F.memo.get(key)
    if cached is not None:
        return cached
    if is_nilpotent(F)[0]:
        cert = SpreadCertificate(0, True)
    else:
        m = F.ring.max_ideal
        start = F.stability_index + 1
        w = width or F.ring.nvars + 4
        while True:
            stop = min(start + w - 1, n_max)
            ns = list(range(start, stop + 1))
            vals = fiber_hilbert_values(F, m, ns)
            d = detect_degree(vals)
            if d is not None:
                cert = SpreadCertificate(d + 1, False, (start, stop), tuple(vals))
                break
            if stop >= n_max:
                raise WindowExhaustedError(
                    f"window exhausted at n_max = {n_max}: no polynomial behaviour of "
                    f"h_m(n) detected on n in [{start}, {stop}]")
            w *= 2
    F.memo[key] = cert
    return cert


def analytic_spread(F: Filtration, n_max: int = N_MAX, width: int | None = None) -> int:
    return spread_certificate(F, n_max, width).spread


# ---------------------------------------------------------------------------
# multiplicity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiberHilbert:
    filtration: Filtration
    J: Ideal
    window: tuple            # (first n, last n)
    values: tuple            # h_J(n) on the window
    poly: tuple              # Fraction coefficients, lowest degree first
    spread: int
    multiplicity: int
    degree: int | None       # degree detected from h_J alone

    def __call__(self, n: int) -> Fraction:
        return evaluate(self.poly, n)

    @property
    def certified(self) -> tuple:
        """Longest final stretch (first, last) of the window where h_J equals the polynomial."""
        start, stop = self.window
        first = stop + 1
        for n in range(stop, start - 1, -1):
            if evaluate(self.poly, n) != self.values[n - start]:
                break
            first = n
        return first, stop

    @property
    def certified_values(self) -> tuple:
        first, _ = self.certified
        return self.values[first - self.window[0]:]


def fiber_hilbert(F: Filtration, J: Ideal, n_max: int = N_MAX,
                  width: int | None = None) -> FiberHilbert:
    """Interpolated fiber Hilbert polynomial of F with respect to J."""
    key = ("fiber_hilbert", J, n_max, width)
    cached = F.memo.get(key)
    if cached is not None:
        return cached
    _require_primary(J)
    ell = analytic_spread(F, n_max, width)
    if ell == 0:
        raise PreconditionError("multiplicity needs analytic spread >= 1 "
                                "(the filtration is nilpotent)")
    start = F.stability_index + 1
    w = max(width or F.ring.nvars + 4, ell + 2)
    while True:
        stop = min(start + w - 1, n_max)
        ns = list(range(start, stop + 1))
        vals = fiber_hilbert_values(F, J, ns)
        if len(vals) >= ell + 2:
            xs, ys = ns[-ell:], vals[-ell:]
            coeffs = _interpolate(xs, ys)
            extra = ns[-ell - 2:-ell]
            ok = all(evaluate(coeffs, n) == v for n, v in zip(extra, vals[-ell - 2:-ell]))
            lead = coeffs[ell - 1] * math.factorial(ell - 1)
            if ok and lead > 0 and lead.denominator == 1:
                out = FiberHilbert(F, J, (start, stop), tuple(vals), tuple(coeffs), ell,
                                   int(lead), detect_degree(vals))
                F.memo[key] = out
                return out
        if stop >= n_max:
            raise WindowExhaustedError(
                f"window exhausted at n_max = {n_max}: h_J(n) does not validate as a "
                f"polynomial of degree {ell - 1} on n in [{start}, {stop}]")
        w *= 2


def multiplicity_limit(F: Filtration, J: Ideal, n_max: int = N_MAX) -> int:
    """e = (l-1)! times the leading coefficient of the fiber Hilbert polynomial."""
    return fiber_hilbert(F, J, n_max).multiplicity


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionData:
    filtration: Filtration
    generators: tuple
    r: int
    first_success: int                    # least n with I_(n+1) = jI_n
    checked: dict = field(default_factory=dict)  # n -> equality holds

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.filtration.ring, self.generators)

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NonReduction:
    """Bounded refutation: I_(n+1) != jI_n for every n >= u up to the bound."""

    filtration: Filtration
    generators: tuple
    bound: int

    def __bool__(self):
        return False


def verify_reduction(F: Filtration, gens, n_max: int = N_MAX) -> ReductionData | NonReduction:
    """Decide whether (gens) reduces F, scanning n = 0..n_max.

    Once I_(n+1) = jI_n at some n >= u, the tail law gives
    I_(n+2) = I_1 I_(n+1) = I_1 jI_n = jI_(n+1), so equality persists.
    """
    if isinstance(gens, Ideal):
        gens = gens.mingens
    gens = tuple(F.ring._coerce(g) for g in gens)
    base = F.base
    for g in gens:
        if g not in base:
            raise PreconditionError(f"generator {g} is not in I_1")
    jj = Ideal(F.ring, gens)
    u = F.stability_index

    def holds(n):
        return contains(jj * F.term(n), F.term(n + 1))

    checked = {}
    persistent = None
    for n in range(n_max + 1):
        checked[n] = holds(n)
        if checked[n] and n >= u:
            persistent = n
            break
    if persistent is None:
        return NonReduction(F, gens, n_max)
    r = persistent
    while r > 0 and checked[r - 1]:
        r -= 1
    for n in range(persistent + 1, max(r, u) + 3):
        checked[n] = holds(n)
        if not checked[n]:
            raise AssertionError(f"tail law violated at n = {n}")
    first = min(n for n, ok in checked.items() if ok)
    return ReductionData(F, gens, r, first, checked)


def reduction_is_minimal_part(red: ReductionData) -> bool:
    """j cap m I_1 = m j: holds when the generators extend to minimal generators of I_1."""
    F = red.filtration
    jj = red.ideal
    m = F.ring.max_ideal
    return intersect(jj, m * F.base) == m * jj


def element_in(F: Filtration, x: Polynomial) -> bool:
    return F.ring._coerce(x) in F.base
