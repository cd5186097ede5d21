"""Weak-(FC) elements and sequences, and the minimal reductions they generate.

An element x of I_1 is weak-(FC) for (J, F) when it is filter-regular with
respect to I_1 (0 : x lies in 0 : I_1^infinity), satisfies the intersection
condition J^m I_n cap (x) = J^m x I_(n-1) for large n, and drops the
dimension of the fiber cone by one.  The filter-regularity test and the
dimension drop are exact; the intersection condition is only checked on a
finite window and results say so.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (AttemptsExhaustedError, ConsistencyViolation, PreconditionError)
from .filtration import Filtration, filtration_quotient, is_nilpotent
from .ideals import Ideal, colon, contains, intersect, primary_to_max, saturate
from .invariants import (N_MAX, ReductionData, analytic_spread, fiber_hilbert_value,
                         verify_reduction)
from .poly import Polynomial

M_MAX = 2
WINDOW = 3
C_MAX = 4
SLIDE = 4
ATTEMPTS = 32


def _element(F: Filtration, x) -> Polynomial:
    x = F.ring._coerce(x)
    if not x.is_homogeneous():
        raise PreconditionError(f"{x} is not homogeneous")
    if x not in F.base:
        raise PreconditionError(f"{x} is not in I_1")
    return x


def _sat_zero(F: Filtration) -> Ideal:
    """0 : I_1^infinity, memoised on the filtration."""
    sat = F.memo.get("sat0")
    if sat is None:
        sat, _ = saturate(F.ring.zero_ideal, F.base)
        F.memo["sat0"] = sat
    return sat


# ---------------------------------------------------------------------------
# element checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FC2Result:
    holds: bool
    annihilator: Ideal   # 0 : x
    saturation: Ideal    # 0 : I_1^infinity

    def __bool__(self):
        return self.holds


def fc2_check(x, F: Filtration) -> FC2Result:
    """Exact test of 0 : x being contained in 0 : I_1^infinity."""
    x = _element(F, x)
    A = F.ring
    ann = colon(A.zero_ideal, A.ideal(x))
    sat = _sat_zero(F)
    return FC2Result(contains(sat, ann), ann, sat)


@dataclass(frozen=True)
class WindowResult:
    """Outcome of a check over a finite (m, n) window; never a proof."""

    holds: bool
    m_range: tuple
    n_range: tuple
    failures: tuple = ()
    tag: str = "window-verified"

    def __bool__(self):
        return self.holds


def torsion_free_index(F: Filtration, n_max: int = N_MAX) -> int:
    """Least v with (0 : I_1^infinity) cap I_v = 0."""
    v = F.memo.get("torsion_free_index")
    if v is None:
        sat = _sat_zero(F)
        v = next((n for n in range(n_max + 1) if intersect(sat, F.term(n)).is_zero()), None)
        if v is None:
            raise PreconditionError(
                f"(0 : I_1^infinity) meets I_n nontrivially for all n <= {n_max}")
        F.memo["torsion_free_index"] = v
    return v


def default_n0(F: Filtration) -> int:
    return max(F.stability_index + 1, 2)


def certified_n0(F: Filtration) -> int:
    """Start of the window on which fiber Hilbert identities are certified.

    Past the torsion-free index, an element with 0 : x inside
    0 : I_1^infinity is regular on I_(n-1), so x I_(n-1) / xJ I_(n-1) has the
    same length as I_(n-1) / J I_(n-1).
    """
    return max(default_n0(F), torsion_free_index(F) + 1)


def fc1_check(x, F: Filtration, I: Ideal, m_max: int = M_MAX, w: int = WINDOW,
              n0: int | None = None) -> WindowResult:
    """I^m I_n cap (x) = I^m x I_(n-1) for m <= m_max and n in [n0, n0 + w]."""
    if is_nilpotent(F)[0]:
        raise PreconditionError(
            "nilpotent filtration: every element satisfies both conditions "
            "vacuously, so the notion carries no information here")
    x = _element(F, x)
    n0 = default_n0(F) if n0 is None else n0
    xi = F.ring.ideal(x)
    failures = []
    for m in range(m_max + 1):
        Im = I ** m
        for n in range(n0, n0 + w + 1):
            lhs = intersect(Im * F.term(n), xi)
            rhs = Im * xi * F.term(n - 1)
            # rhs is always inside lhs
            if not contains(rhs, lhs):
                failures.append((m, n))
    return WindowResult(not failures, (0, m_max), (n0, n0 + w), tuple(failures))


@dataclass(frozen=True)
class SuperficialResult:
    holds: bool
    c: int | None
    m_range: tuple
    w: int

    def __bool__(self):
        return self.holds


def fc1_search(x, F: Filtration, I: Ideal, m_max: int = M_MAX, w: int = WINDOW,
               slide: int = SLIDE) -> WindowResult:
    """First passing window starting in [n0, n0 + slide], n0 the certified start.

    The condition is only required for large n, so a failure at small n is
    not a refutation; the returned result records the window actually used.
    """
    n0 = certified_n0(F)
    res = None
    for start in range(n0, n0 + slide + 1):
        res = fc1_check(x, F, I, m_max, w, start)
        if res:
            return res
    return res


def superficial_check(x, F: Filtration, I: Ideal, m_max: int = M_MAX, w: int = WINDOW,
                      c_max: int = C_MAX) -> SuperficialResult:
    """Least c <= c_max with (I^m I_(n+1) : x) cap I^m I_c = I^m I_n on the window.

    The window is m in [0, m_max], n in [c, c + w].
    """
    x = _element(F, x)
    xi = F.ring.ideal(x)
    for c in range(c_max + 1):
        ok = True
        for m in range(m_max + 1):
            Im = I ** m
            low = Im * F.term(c)
            for n in range(c, c + w + 1):
                lhs = intersect(colon(Im * F.term(n + 1), xi), low)
                # the reverse inclusion always holds
                if not contains(Im * F.term(n), lhs):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return SuperficialResult(True, c, (0, m_max), w)
    return SuperficialResult(False, None, (0, m_max), w)


def difference_check(x, F: Filtration, J: Ideal, ns: Sequence[int]) -> dict:
    """n -> (h of F/(x) at n, h(n) - h(n-1)) for the given indices."""
    x = _element(F, x)
    Fx = filtration_quotient(F, F.ring.ideal(x))
    Jx = Ideal(Fx.ring, J.gens)
    out = {}
    for n in ns:
        prev = fiber_hilbert_value(F, J, n - 1) if n >= 1 else 0
        out[n] = (fiber_hilbert_value(Fx, Jx, n), fiber_hilbert_value(F, J, n) - prev)
    return out


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FCCertificate:
    element: Polynomial
    step: int
    attempt: int
    coefficients: tuple
    fc2: FC2Result
    fc1_window: WindowResult
    superficial: SuperficialResult | None
    dim_drop: tuple             # (spread before, spread after)
    quotient_differences: dict  # n -> (h'(n), h(n) - h(n-1))

    @property
    def superficial_witness(self) -> int | None:
        return None if self.superficial is None else self.superficial.c


@dataclass
class WeakFCSequence:
    filtration: Filtration
    J: Ideal
    elements: tuple
    certificates: tuple
    maximal: bool
    seed: int
    spread: int
    rejected: int = 0           # candidates drawn but rejected, over all steps
    _reduction: ReductionData | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)


def _candidates(F: Filtration, pool: Ideal | None) -> tuple:
    if pool is None:
        gens = F.base.mingens
        what = "I_1"
    else:
        gens = pool.mingens
        what = "the pool"
    if len({g.degree() for g in gens}) > 1:
        raise PreconditionError(
            f"{what} is not equigenerated and no explicit candidates were given")
    return gens


def find_weak_fc_sequence(F: Filtration, J: Ideal, pool: Ideal | None = None, seed: int = 0,
                          attempts: int = ATTEMPTS, m_max: int = M_MAX, w: int = WINDOW,
                          n_max: int = N_MAX, superficial: bool = True) -> WeakFCSequence:
    """Build a maximal weak-(FC)-sequence by seeded random combinations.

    Each step draws uniform field coefficients for the candidate generators
    and accepts the combination once filter-regularity, the windowed
    intersection condition and an exact drop of the spread all hold.
    """
    if J.ring != F.ring:
        raise PreconditionError("J lives in a different ring")
    if J.is_unit() or not primary_to_max(J)[0]:
        raise PreconditionError(f"J = {J} is not primary to the maximal ideal")
    if pool is not None:
        if not verify_reduction(F, pool, n_max):
            raise PreconditionError(f"pool {pool} does not verify as a reduction of F")
    gens = _candidates(F, pool)
    rng = random.Random(seed)
    field_ = F.ring.field
    ell0 = analytic_spread(F, n_max)

    elements, certs = [], []
    rejected = 0
    Fi, ell = F, ell0
    step = 0
    while not is_nilpotent(Fi)[0]:
        step += 1
        Ji = Ideal(Fi.ring, J.gens)
        for attempt in range(1, attempts + 1):
            coeffs = tuple(field_.random_element(rng) for _ in gens)
            x = Fi.ring.element(sum((g.scale(c) for g, c in zip(gens, coeffs)),
                                    Fi.ring.poly.zero()))
            if x.is_zero():
                rejected += 1
                continue
            f2 = fc2_check(x, Fi)
            if not f2:
                rejected += 1
                continue
            f1 = fc1_search(x, Fi, Ji, m_max, w)
            if not f1:
                rejected += 1
                continue
            Fnext = filtration_quotient(Fi, Fi.ring.ideal(x))
            ell_next = analytic_spread(Fnext, n_max)
            if ell_next != ell - 1:
                rejected += 1
                continue
            sup = superficial_check(x, Fi, Ji, m_max, w) if superficial else None
            diffs = difference_check(x, Fi, Ji, range(f1.n_range[0], f1.n_range[1] + 1))
            certs.append(FCCertificate(x, step, attempt, coeffs, f2, f1, sup,
                                       (ell, ell_next), diffs))
            elements.append(x)
            Fi, ell = Fnext, ell_next
            break
        else:
            raise AttemptsExhaustedError(
                f"attempts exhausted: no weak-(FC) element found at step {step} "
                f"after {attempts} candidates", step=step)
    if len(elements) != ell0:
        raise ConsistencyViolation(
            f"maximal weak-(FC)-sequence has length {len(elements)} but the "
            f"analytic spread is {ell0}")
    return WeakFCSequence(F, J, tuple(elements), tuple(certs), True, seed, ell0, rejected)


def reduction_from_sequence(seq: WeakFCSequence, n_max: int = N_MAX) -> ReductionData:
    """The ideal generated by a maximal sequence, verified as a reduction."""
    if not seq.maximal or len(seq.elements) < seq.spread or not seq.elements:
        raise PreconditionError(
            "need a maximal weak-(FC)-sequence of length equal to the analytic spread >= 1")
    if seq._reduction is None:
        red = verify_reduction(seq.filtration, seq.elements, n_max)
        if not red:
            raise ConsistencyViolation(
                f"maximal weak-(FC)-sequence does not generate a reduction up to n = {n_max}")
        seq._reduction = red
    return seq._reduction
