from __future__ import annotations

import pytest

from fibercone.errors import AttemptsExhaustedError, PreconditionError
from fibercone.fcseq import (WeakFCSequence, certified_n0, fc1_check, fc1_search, fc2_check,
                             find_weak_fc_sequence, reduction_from_sequence,
                             superficial_check)
from fibercone.filtration import filtration_adic, filtration_quotient, is_nilpotent
from fibercone.ideals import AmbientRing, contains, finite_quotient_dim, hilbert_fn, intersect
from fibercone.invariants import analytic_spread, multiplicity_limit
from fibercone.oracle import oracle_graded_dim

LINE = AmbientRing("x")
NODE = AmbientRing("xy", relations=["x*y"])


def test_fc2_examples(plane):
    F = filtration_adic(plane.max_ideal)
    assert fc2_check("x + 3*y", F)
    G = filtration_adic(NODE.max_ideal)
    res = fc2_check("x", G)
    assert not res and res.annihilator == NODE.ideal("y") and res.saturation.is_zero()
    assert fc2_check("x + y", G)
    with pytest.raises(PreconditionError, match="not in I_1"):
        fc2_check("x", filtration_adic(plane.ideal("y")))


def test_fc1_examples(plane):
    F = filtration_adic(LINE.ideal("x"))
    res = fc1_check("x", F, LINE.ideal("x"))
    assert res and res.tag == "window-verified" and res.n_range == (2, 5)
    G = filtration_adic(plane.ideal("x^2", "x*y", "y^2"))
    assert fc1_check("3*x^2 + 5*x*y - 7*y^2", G, plane.max_ideal)


def test_fc1_cells_against_oracle(plane):
    # each cell is an inclusion rhs <= lhs; equal degreewise dimensions prove equality
    x = plane.poly("3*x^2 + 5*x*y - 7*y^2")
    gens = [plane.poly(s) for s in ("x^2", "x*y", "y^2")]
    G = filtration_adic(plane.ideal(gens))
    m = plane.max_ideal
    xi = plane.ideal(x)
    for mm in range(2):
        for n in (2, 3):
            big = m ** mm * G.term(n)
            lhs = intersect(big, xi)
            rhs = m ** mm * xi * G.term(n - 1)
            for d in range(2 * n + mm + 4):
                # dim (B cap (x))_d = dim B_d + dim (x)_d - dim (B + (x))_d
                expect = (oracle_graded_dim(list(big.gens), [], d)
                          + oracle_graded_dim([x], [], d)
                          - oracle_graded_dim(list(big.gens) + [x], [], d))
                got = hilbert_fn(plane.zero_ideal, d) - hilbert_fn(rhs, d)
                assert got == expect
            assert lhs == rhs


def test_fc1_rejects_nilpotent():
    B = AmbientRing("xy", relations=["x^2", "x*y", "y^2"])
    F = filtration_adic(B.max_ideal)
    with pytest.raises(PreconditionError, match="nilpotent filtration") as err:
        fc1_check("x", F, B.max_ideal)
    assert "vacuously" in str(err.value)


def test_superficial_examples():
    F = filtration_adic(LINE.ideal("x"))
    res = superficial_check("x", F, LINE.ideal("x"))
    assert res and res.c == 0


def test_nilpotent_element_is_not_superficial():
    # over k[x,y]/(x^2) the element w = x * y^(c-1) (or x when c = 0) lies in
    # (m^(n+1) : x) cap m^c but not in m^n for n = max(c+1, 2), so no c works;
    # filter-regularity fails as well
    C = AmbientRing("xy", relations=["x^2"])
    m = C.max_ideal
    F = filtration_adic(m)
    assert not superficial_check("x", F, m)
    assert not fc2_check("x", F)
    x = C.poly("x")
    for c in range(5):
        w = C.poly(f"x*y^{c - 1}") if c > 1 else x
        n = max(c + 1, 2)
        assert w * x in C.zero_ideal
        assert w in m ** c and w not in m ** n


def test_sequence_examples(plane):
    seq = find_weak_fc_sequence(filtration_adic(LINE.ideal("x")), LINE.ideal("x"), seed=1)
    assert len(seq) == 1 and seq.elements[0].degree() == 1
    F = filtration_adic(plane.max_ideal)
    seq = find_weak_fc_sequence(F, plane.max_ideal, seed=7)
    assert len(seq) == 2 and all(x.degree() == 1 for x in seq.elements)
    Q = filtration_quotient(F, plane.ideal(list(seq.elements)))
    assert is_nilpotent(Q)[0]
    assert [c.dim_drop for c in seq.certificates] == [(2, 1), (1, 0)]
    B = AmbientRing("xy", relations=["x^2", "x*y", "y^2"])
    empty = find_weak_fc_sequence(filtration_adic(B.max_ideal), B.max_ideal, seed=1)
    assert len(empty) == 0 and empty.maximal and empty.spread == 0


def test_sequence_is_deterministic(plane):
    F = filtration_adic(plane.ideal("x^2", "x*y", "y^2"))
    a = find_weak_fc_sequence(F, plane.max_ideal, seed=11)
    b = find_weak_fc_sequence(F, plane.max_ideal, seed=11)
    c = find_weak_fc_sequence(F, plane.max_ideal, seed=12)
    assert a.elements == b.elements and a.elements != c.elements


def test_sequence_with_pool(plane):
    F = filtration_adic(plane.ideal("x^2", "x*y", "y^2"))
    seq = find_weak_fc_sequence(F, plane.max_ideal, pool=plane.ideal("x^2", "y^2"), seed=3)
    assert all(x.terms.keys() <= {(2, 0), (0, 2)} for x in seq.elements)
    with pytest.raises(PreconditionError, match="does not verify as a reduction"):
        find_weak_fc_sequence(F, plane.max_ideal, pool=plane.ideal("x^2"), seed=3)


def test_sequence_errors(plane):
    F = filtration_adic(plane.ideal("x", "y^2"))
    with pytest.raises(PreconditionError, match="not equigenerated"):
        find_weak_fc_sequence(F, plane.max_ideal, seed=1)
    G = filtration_adic(plane.max_ideal)
    with pytest.raises(PreconditionError, match="not primary"):
        find_weak_fc_sequence(G, plane.ideal("x"), seed=1)
    with pytest.raises(AttemptsExhaustedError) as err:
        find_weak_fc_sequence(G, plane.max_ideal, seed=1, attempts=0)
    assert err.value.step == 1


def test_reduction_from_sequence(plane):
    F = filtration_adic(plane.max_ideal)
    assert reduction_from_sequence(find_weak_fc_sequence(F, plane.max_ideal, seed=2)).r == 0
    G = filtration_adic(plane.ideal("x^2", "x*y", "y^2"))
    seq = find_weak_fc_sequence(G, plane.max_ideal, seed=2)
    assert reduction_from_sequence(seq).r == 1
    short = WeakFCSequence(G, plane.max_ideal, seq.elements[:1], seq.certificates[:1],
                           False, 2, 2)
    with pytest.raises(PreconditionError):
        reduction_from_sequence(short)


def test_accepted_elements_properties(plane):
    m = plane.max_ideal
    F = filtration_adic(plane.ideal("x^4", "x^3*y", "x*y^3", "y^4"))
    seq = find_weak_fc_sequence(F, m, seed=5)
    x = seq.elements[0]
    cert = seq.certificates[0]
    assert cert.superficial.holds
    assert all(a == b for a, b in cert.quotient_differences.values())
    # the multiplicity survives dividing by a weak-(FC) element when the spread is > 1
    Fx = filtration_quotient(F, plane.ideal(x))
    assert analytic_spread(Fx) == 1
    assert multiplicity_limit(Fx, Fx.ring.ideal(list(m.gens))) == multiplicity_limit(F, m)
    # x is regular: lengths are unchanged by multiplying with x
    n = cert.fc1_window.n_range[0]
    In = F.term(n)
    assert finite_quotient_dim(In, m * In) == finite_quotient_dim(In * x, m * In * x)


def test_certified_window_skips_torsion():
    E = AmbientRing("xy", relations=["x^2", "x*y"])
    F = filtration_adic(E.max_ideal)
    assert certified_n0(F) == 3
    seq = find_weak_fc_sequence(F, E.max_ideal, seed=1)
    assert all(a == b for a, b in seq.certificates[0].quotient_differences.values())
    assert contains(E.max_ideal, seq.certificates[0].fc2.annihilator)


def test_fc1_fails_on_an_early_window(plane):
    # passes the exact annihilator check yet fails the intersection condition at
    # n = 2; the condition only binds for large n and holds from n = 3 on
    F = filtration_adic(plane.ideal("x^4", "x^3*y", "x*y^3", "y^4"))
    x = "x^4 + 2*x^3*y - 3*x*y^3 + 5*y^4"
    assert fc2_check(x, F)
    early = fc1_check(x, F, plane.max_ideal, n0=2)
    assert not early and early.failures == ((0, 2),)
    assert fc1_check(x, F, plane.max_ideal, n0=3)
    found = fc1_search(x, F, plane.max_ideal)
    assert found and found.n_range[0] == 3
