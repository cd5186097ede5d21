"""Multiplicity formulas and Cohen-Macaulay criteria for fiber cones.

Every quantity is computed in two independent ways where possible:

* the multiplicity from the interpolated fiber Hilbert polynomial and from
  a single colon length at n >= r;
* Cohen-Macaulayness from ideal-theoretic conditions on I_n for n <= r and
  from comparing the length of F_J(F) / jt F_J(F) with the multiplicity.

Here j is the ideal of a maximal weak-(FC)-sequence, r its reduction number,
Q the ideal of its first l - 1 elements and P = Q : I_1^infinity.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConsistencyViolation, PreconditionError
from .fcseq import WeakFCSequence, find_weak_fc_sequence, reduction_from_sequence
from .filtration import Filtration, filtration_quotient, filtration_rescale, is_nilpotent
from .ideals import Ideal, colon, contains, finite_quotient_dim, intersect, length, saturate
from .invariants import (N_MAX, ReductionData, analytic_spread, multiplicity_limit,
                         verify_reduction)

T_MAX = 8
STABLE_RUN = 5  # consecutive CM verdicts required by the rescaling scan


def _sat(X: Ideal, F: Filtration) -> Ideal:
    return saturate(X, F.base)[0]


def _prefix(F: Filtration, seq: WeakFCSequence, i: int) -> Ideal:
    return Ideal(F.ring, seq.elements[:i])


def _check_seq(F: Filtration, seq: WeakFCSequence) -> ReductionData:
    if seq.filtration is not F:
        raise PreconditionError("sequence was built for a different filtration")
    if not seq.elements:
        raise PreconditionError("analytic spread is 0: nothing to compute")
    return reduction_from_sequence(seq)


# ---------------------------------------------------------------------------
# multiplicity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplicityReport:
    e_limit: int
    e_thm33: int
    values: dict            # n -> colon length at n
    agreement: bool


def colon_length(F: Filtration, J: Ideal, P: Ideal, n: int) -> int:
    """length of I_n / (P cap I_n + J I_n)."""
    In = F.term(n)
    return finite_quotient_dim(In, intersect(P, In) + J * In)


def multiplicity_thm33(F: Filtration, J: Ideal, seq: WeakFCSequence) -> MultiplicityReport:
    """e = length I_n / ((Q : I_1^inf) cap I_n + J I_n) for n = r, r+1, r+2."""
    red = _check_seq(F, seq)
    ell = len(seq.elements)
    P = _sat(_prefix(F, seq, ell - 1), F)
    values = {n: colon_length(F, J, P, n) for n in range(red.r, red.r + 3)}
    if len(set(values.values())) != 1:
        raise ConsistencyViolation(f"colon length is not constant for n >= r: {values}")
    e = next(iter(values.values()))
    e_lim = multiplicity_limit(F, J)
    return MultiplicityReport(e_lim, e, values, e == e_lim)


def multiplicity_lemma32(F: Filtration, J: Ideal, x) -> tuple:
    """``(e, route)`` for spread 1 with (x) a reduction; route is "i" or "ii".

    Route i (grade I_1 >= 1) uses length I_n / J I_n, route ii divides out
    (0 : I_1^inf) cap I_n as well; both at n = r and r + 1.
    """
    if analytic_spread(F) != 1:
        raise PreconditionError("this formula needs analytic spread 1")
    red = verify_reduction(F, [x])
    if not red:
        raise PreconditionError(f"({x}) is not a reduction of F up to n = {red.bound}")
    A = F.ring
    if colon(A.zero_ideal, F.base).is_zero():
        route, P = "i", A.zero_ideal
    else:
        route, P = "ii", _sat(A.zero_ideal, F)
    values = {colon_length(F, J, P, n) for n in (red.r, red.r + 1)}
    if len(values) != 1:
        raise ConsistencyViolation(f"length not constant for n >= r: {values}")
    return values.pop(), route


# ---------------------------------------------------------------------------
# length comparisons along the quotient chain
# ---------------------------------------------------------------------------

def _param_length(F: Filtration, J: Ideal, jj: Ideal, r: int, X: Ideal) -> int:
    """length of F_J(F/X) / jt F_J(F/X), by the finite sum over n <= r."""
    total = length(J + X)
    for n in range(1, r + 1):
        In = F.term(n)
        total += finite_quotient_dim(In, intersect(X, In) + jj * F.term(n - 1) + J * In)
    return total


@dataclass(frozen=True)
class Prop31Report:
    i: int
    L_primed: int           # quotient by P(i)
    L_i: int                # quotient by Q(i)
    L: int
    ordered: bool           # L' <= L_i <= L
    membership: dict        # n -> P(i) cap I_n inside jI_(n-1) + J I_n
    consistent: bool        # (L' == L) iff all memberships hold


def prop31_lengths(F: Filtration, J: Ideal, seq: WeakFCSequence, i: int) -> Prop31Report:
    red = _check_seq(F, seq)
    ell = len(seq.elements)
    if not 0 <= i < ell:
        raise PreconditionError(f"need 0 <= i < {ell}, got {i}")
    jj, r = red.ideal, red.r
    Qi = _prefix(F, seq, i)
    Pi = _sat(Qi, F)
    zero = F.ring.zero_ideal
    L = _param_length(F, J, jj, r, zero)
    Li = _param_length(F, J, jj, r, Qi)
    Lp = _param_length(F, J, jj, r, Pi)
    membership = {}
    for n in range(r + 1):
        In = F.term(n)
        membership[n] = contains(jj * F.term(n - 1) + J * In, intersect(Pi, In))
    equal = all(membership.values())
    return Prop31Report(i, Lp, Li, L, Lp <= Li <= L, membership, (Lp == L) == equal)


def chain_multiplicities(F: Filtration, J: Ideal, seq: WeakFCSequence, i: int) -> tuple:
    """(e(F), e(F/Q(i)), e(F/P(i)))."""
    Qi = _prefix(F, seq, i)
    Pi = _sat(Qi, F)
    out = [multiplicity_limit(F, J)]
    for X in (Qi, Pi):
        G = filtration_quotient(F, X)
        out.append(multiplicity_limit(G, Ideal(G.ring, J.gens)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Cohen-Macaulayness
# ---------------------------------------------------------------------------

def cm_lemma41(F: Filtration, J: Ideal, x) -> tuple:
    """``(verdict, per-n detail)`` for spread 1 = grade I_1 and (x) a reduction.

    CM iff x I_(n-1) cap J I_n = J x I_(n-1) for 1 <= n <= r.
    """
    if analytic_spread(F) != 1:
        raise PreconditionError("this criterion needs analytic spread 1")
    A = F.ring
    if not colon(A.zero_ideal, F.base).is_zero():
        raise PreconditionError("this criterion needs grade I_1 = 1")
    red = verify_reduction(F, [x])
    if not red:
        raise PreconditionError(f"({x}) is not a reduction of F up to n = {red.bound}")
    xi = A.ideal(A._coerce(x))
    detail = {}
    for n in range(1, red.r + 1):
        left = intersect(xi * F.term(n - 1), J * F.term(n))
        detail[n] = left == J * xi * F.term(n - 1)
    return all(detail.values()), detail


@dataclass(frozen=True)
class Thm42Result:
    verdict: bool
    cond_i: dict            # n -> bool, 0 <= n <= r
    cond_ii: dict           # n -> bool, 1 <= n <= r


def cm_thm42(F: Filtration, J: Ideal, seq: WeakFCSequence) -> Thm42Result:
    """Ideal-theoretic CM criterion on the degrees 0..r."""
    red = _check_seq(F, seq)
    jj, r = red.ideal, red.r
    P = _sat(_prefix(F, seq, len(seq.elements) - 1), F)
    cond_i, cond_ii = {}, {}
    for n in range(r + 1):
        In = F.term(n)
        below = jj * F.term(n - 1)
        cond_i[n] = contains(below + J * In, intersect(P, In))
        if n >= 1:
            left = intersect(below + P, P + J * In)
            cond_ii[n] = left == J * below + P
    verdict = all(cond_i.values()) and all(cond_ii.values())
    return Thm42Result(verdict, cond_i, cond_ii)


@dataclass(frozen=True)
class DirectResult:
    L: int
    e: int
    verdict: bool


def cm_direct(F: Filtration, J: Ideal, seq: WeakFCSequence) -> DirectResult:
    """CM iff length(F_J(F) / jt F_J(F)) equals the multiplicity."""
    red = _check_seq(F, seq)
    L = _param_length(F, J, red.ideal, red.r, F.ring.zero_ideal)
    e = multiplicity_thm33(F, J, seq).e_thm33
    if L < e:
        raise ConsistencyViolation(f"parameter length {L} is below the multiplicity {e}")
    return DirectResult(L, e, L == e)


@dataclass(frozen=True)
class CMReport:
    filtration: Filtration
    J: Ideal
    sequence: WeakFCSequence
    r: int
    route_A: Thm42Result
    route_B: DirectResult

    @property
    def agreement(self) -> bool:
        return self.route_A.verdict == self.route_B.verdict

    @property
    def verdict(self) -> bool:
        return self.route_A.verdict and self.route_B.verdict


def cm_report(F: Filtration, J: Ideal, seq: WeakFCSequence) -> CMReport:
    red = _check_seq(F, seq)
    return CMReport(F, J, seq, red.r, cm_thm42(F, J, seq), cm_direct(F, J, seq))


# ---------------------------------------------------------------------------
# rescaling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cor43Result:
    T0: int
    verified: tuple         # (T0, T0 + STABLE_RUN - 1)
    verdicts: dict = field(default_factory=dict)  # T -> (route A, route B)


def cor43_scan(F: Filtration, J: Ideal | None = None, T_max: int = T_MAX, seed: int = 0,
               attempts: int = 32, n_max: int = N_MAX) -> Cor43Result:
    """Least T0 <= T_max with F^(T) Cohen-Macaulay for T0 <= T < T0 + 5."""
    if is_nilpotent(F)[0]:
        raise PreconditionError("nilpotent filtration")
    if analytic_spread(F, n_max) != 1:
        raise PreconditionError("the rescaling scan needs analytic spread 1")
    J = F.ring.max_ideal if J is None else J
    verdicts: dict = {}

    def cm_at(T):
        if T not in verdicts:
            G = filtration_rescale(F, T)
            seq = find_weak_fc_sequence(G, J, seed=seed, attempts=attempts, n_max=n_max)
            rep = cm_report(G, J, seq)
            if not rep.agreement:
                raise ConsistencyViolation(
                    f"CM routes disagree on the rescaled filtration at T = {T}")
            verdicts[T] = (rep.route_A.verdict, rep.route_B.verdict)
        return all(verdicts[T])

    for T0 in range(1, T_max + 1):
        if all(cm_at(T) for T in range(T0, T0 + STABLE_RUN)):
            return Cor43Result(T0, (T0, T0 + STABLE_RUN - 1), dict(sorted(verdicts.items())))
    raise ConsistencyViolation(
        f"no T0 <= {T_max} with Cohen-Macaulay rescalings on [T0, T0 + {STABLE_RUN - 1}]")
