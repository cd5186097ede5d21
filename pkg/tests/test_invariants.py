from __future__ import annotations

import pytest

from fibercone.errors import PreconditionError, WindowExhaustedError
from fibercone.filtration import Filtration, filtration_adic, filtration_seeded
from fibercone.ideals import AmbientRing
from fibercone.invariants import (analytic_spread, detect_degree, fiber_hilbert,
                                  fiber_hilbert_value, multiplicity_limit,
                                  reduction_is_minimal_part, spread_certificate,
                                  verify_reduction)

from conftest import corpus_instances
from oracle_routes import fiber_value


def test_fiber_hilbert_values(plane):
    m = plane.max_ideal
    F = filtration_adic(m)
    assert [fiber_hilbert_value(F, m, n) for n in range(6)] == [1, 2, 3, 4, 5, 6]
    G = filtration_adic(plane.ideal("x^2", "x*y", "y^2"))
    assert [fiber_hilbert_value(G, m, n) for n in range(6)] == [1, 3, 5, 7, 9, 11]
    K = plane.ideal("x^2", "y^2")
    assert fiber_hilbert_value(G, K, 0) == 4
    with pytest.raises(PreconditionError, match="not primary"):
        fiber_hilbert_value(F, plane.ideal("x"), 1)


def test_fiber_hilbert_matches_oracle(plane):
    I = [plane.poly(s) for s in ("x^4", "x^3*y", "x*y^3", "y^4")]
    m = plane.max_ideal
    F = filtration_adic(plane.ideal(I))
    for n in range(4):
        assert fiber_hilbert_value(F, m, n) == fiber_value(I, list(m.gens), n, [],
                                                           plane.poly.one())


def test_analytic_spread_examples(plane, space):
    assert analytic_spread(filtration_adic(AmbientRing("x").ideal("x"))) == 1
    assert analytic_spread(filtration_adic(plane.ideal("x^2", "x*y", "y^2"))) == 2
    B = AmbientRing("xy", relations=["x^2", "x*y", "y^2"])
    cert = spread_certificate(filtration_adic(B.max_ideal))
    assert cert.spread == 0 and cert.nilpotent
    assert analytic_spread(filtration_adic(space.max_ideal)) == 3
    assert analytic_spread(filtration_adic(space.ideal("x", "y"))) == 2


def test_window_exhausted(space):
    with pytest.raises(WindowExhaustedError, match="window exhausted"):
        spread_certificate(filtration_adic(space.max_ideal), n_max=3)


def test_detect_degree():
    assert detect_degree([4, 9, 13, 17, 21, 25]) == 1
    assert detect_degree([1, 1, 1, 1]) == 0
    assert detect_degree([1, 4, 9, 16, 25, 36]) == 2
    assert detect_degree([1, 2, 3]) is None


def test_multiplicity_examples(plane):
    m = plane.max_ideal
    assert multiplicity_limit(filtration_adic(m), m) == 1
    assert multiplicity_limit(filtration_adic(plane.ideal("x^2", "x*y", "y^2")), m) == 2
    # the chain m^(2n-1), evaluated without validation: h(n) = 2n
    chain = Filtration(plane, "seeded", (m ** 2, m ** 3), 2)
    fh = fiber_hilbert(chain, m)
    assert multiplicity_limit(chain, m) == 2 and fh(5) == 10
    B = AmbientRing("xy", relations=["x^2", "x*y", "y^2"])
    with pytest.raises(PreconditionError, match="nilpotent"):
        multiplicity_limit(filtration_adic(B.max_ideal), B.max_ideal)


def test_verify_reduction_examples(plane):
    G = filtration_adic(plane.ideal("x^2", "x*y", "y^2"))
    red = verify_reduction(G, ["x^2", "y^2"])
    assert red and red.r == 1 and red.first_success == 1
    F = filtration_adic(plane.max_ideal)
    assert verify_reduction(F, ["x", "y"]).r == 0
    no = verify_reduction(filtration_adic(plane.max_ideal ** 2), ["x^2"], n_max=10)
    assert not no and no.bound == 10
    with pytest.raises(PreconditionError, match="not in I_1"):
        verify_reduction(G, ["x"])


def test_reduction_data_invariants():
    for label, F, _ in corpus_instances():
        if analytic_spread(F) == 0:
            continue
        gens = F.base.mingens
        red = verify_reduction(F, gens)
        jj = red.ideal
        u = F.stability_index
        for n in range(red.r, max(red.r, u) + 3):
            assert jj * F.term(n) == F.term(n + 1), label
        if red.r > 0:
            assert jj * F.term(red.r - 1) != F.term(red.r), label
        assert reduction_is_minimal_part(red), label


def test_spread_from_other_J_has_same_degree(plane):
    G = filtration_adic(plane.ideal("x^2", "x*y", "y^2"))
    fh = fiber_hilbert(G, plane.ideal("x^2", "y^2"))
    assert fh.degree + 1 == fh.spread == 2
    assert fh.multiplicity == 4


def test_seeded_substitute(plane):
    m = plane.max_ideal
    S = filtration_seeded([plane.ideal("x^2", "y^2"), m ** 4], 2)
    assert analytic_spread(S) == 2 and multiplicity_limit(S, m) == 2
    assert verify_reduction(S, ["x^2", "y^2"]).r == 2


def test_certified_range_skips_prestable_values(plane):
    F = filtration_adic(plane.ideal("x^4", "x^3*y", "x*y^3", "y^4"))
    fh = fiber_hilbert(F, plane.max_ideal)
    assert fh.values[0] == 4 and fh(1) == 5
    assert fh.certified == (2, fh.window[1])
    assert fh.certified_values == fh.values[1:]
