from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from fibercone.errors import NotFiniteLengthError, PreconditionError, RingMismatchError
from fibercone.ideals import (AmbientRing, colon, contains, finite_quotient_dim, hilbert_fn,
                              ideal_arith, intersect, length, length_bound, primary_to_max,
                              saturate)
from fibercone.oracle import oracle_graded_dim

from conftest import homogeneous_poly

A = AmbientRing("xyz")
gen_lists = st.lists(homogeneous_poly(A.poly, 2, 3), min_size=1, max_size=3)


def test_arith_examples(plane):
    x, y = plane.ideal("x"), plane.ideal("y")
    m = plane.max_ideal
    assert ideal_arith("sum", x, y) == m
    assert ideal_arith("product", m, m) == plane.ideal("x^2", "x*y", "y^2")
    assert ideal_arith("power", m, 0).is_unit()


def test_intersect_examples(plane):
    assert intersect(plane.ideal("x"), plane.ideal("y")) == plane.ideal("x*y")
    assert intersect(plane.ideal("x^2", "y"), plane.ideal("x")) == plane.ideal("x^2", "x*y")
    I = plane.ideal("x^2", "x*y + y^2")
    assert intersect(I, I) == I


def test_colon_examples(plane):
    assert colon(plane.ideal("x*y"), plane.ideal("x")) == plane.ideal("y")
    I = plane.ideal("x^2", "y^3")
    assert colon(I, plane.unit_ideal) == I
    B = AmbientRing("xy", relations=["x*y", "y^2"])
    assert colon(B.zero_ideal, B.ideal("x")) == B.ideal("y")


def test_saturation_examples(plane):
    sat, steps = saturate(plane.ideal("x^2*y", "x*y^2"), plane.max_ideal)
    assert sat == plane.ideal("x*y") and steps == 2
    assert saturate(plane.zero_ideal, plane.ideal("x"))[0].is_zero()
    B = AmbientRing("xy", relations=["x*y", "y^2"])
    assert saturate(B.zero_ideal, B.ideal("x"))[0] == B.ideal("y")


def test_contains_examples(plane):
    assert contains(plane.ideal("x"), plane.ideal("x^2"))
    assert not contains(plane.ideal("x^2"), plane.ideal("x"))
    assert plane.ideal("x + y", "y") == plane.max_ideal


def test_hilbert_fn_examples(plane):
    I = plane.ideal("x^2", "y^3")
    assert [hilbert_fn(I, d) for d in range(5)] == [1, 2, 2, 1, 0]
    assert [hilbert_fn(plane.zero_ideal, d) for d in range(5)] == [1, 2, 3, 4, 5]
    assert [hilbert_fn(plane.max_ideal, d) for d in range(3)] == [1, 0, 0]


def test_finite_quotient_dim_examples(plane):
    m = plane.max_ideal
    assert finite_quotient_dim(m, m ** 2) == 2
    for n in range(1, 6):
        assert finite_quotient_dim(m ** n, m ** (n + 1)) == n + 1
    with pytest.raises(NotFiniteLengthError, match="not finite length"):
        finite_quotient_dim(plane.ideal("x"), plane.ideal("x^2"))
    with pytest.raises(PreconditionError):
        finite_quotient_dim(plane.ideal("x^2"), plane.ideal("x"))


def test_primary_to_max_examples(plane):
    assert primary_to_max(plane.max_ideal) == (True, 1)
    assert primary_to_max(plane.ideal("x^2", "y^2")) == (True, 3)
    assert primary_to_max(plane.ideal("x")) == (False, None)


def test_length_bound_agrees_with_hilbert_route(plane):
    m = plane.max_ideal
    X, Y = plane.ideal("x^2", "y"), plane.ideal("x^3", "x*y", "y^2")
    dims = [hilbert_fn(Y, d) - hilbert_fn(X, d) for d in range(10)]
    bound = length_bound(X, Y)
    assert all(v == 0 for v in dims[bound + 1:])
    assert length_bound(m, m ** 3) == 2


def test_quotient_ring_ideals():
    B = AmbientRing("xy", relations=["x*y"])
    assert B.ideal("x*y").is_zero()
    assert length(B.ideal("x^2", "y^2")) == 3
    assert B.element("x^2*y + y^3") == B.poly("y^3")


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        AmbientRing("xy").ideal("x") + AmbientRing("xyz").ideal("x")


def test_non_homogeneous_rejected(plane):
    with pytest.raises(PreconditionError):
        plane.ideal("x^2 + y")


@given(gen_lists, st.integers(0, 6))
def test_hilbert_fn_matches_oracle(gens, d):
    I = A.ideal(gens)
    total = hilbert_fn(A.zero_ideal, d)
    assert total - hilbert_fn(I, d) == oracle_graded_dim(gens, [], d)


@given(gen_lists, gen_lists, st.integers(0, 5))
def test_intersection_dimension_formula(g1, g2, d):
    # dim (X cap Y)_d = dim X_d + dim Y_d - dim (X + Y)_d, with the right side by the oracle
    X, Y = A.ideal(g1), A.ideal(g2)
    inter = intersect(X, Y)
    total = hilbert_fn(A.zero_ideal, d)
    expected = (oracle_graded_dim(g1, [], d) + oracle_graded_dim(g2, [], d)
                - oracle_graded_dim(g1 + g2, [], d))
    assert total - hilbert_fn(inter, d) == expected
    assert contains(X, inter) and contains(Y, inter) and contains(inter, X * Y)


@given(gen_lists, gen_lists)
def test_colon_properties(g1, g2):
    X, Y = A.ideal(g1), A.ideal(g2)
    C = colon(X, Y)
    assert contains(X, C * Y)
    assert contains(C, X)
    # idempotence of saturation
    S, _ = saturate(X, Y)
    assert saturate(S, Y)[0] == S


@given(st.integers(1, 3), st.integers(0, 2), st.integers(0, 2))
def test_length_additivity(a, b, c):
    m = A.max_ideal
    X, Y, Z = m ** a, m ** (a + b), m ** (a + b + c)
    assert finite_quotient_dim(X, Z) == finite_quotient_dim(X, Y) + finite_quotient_dim(Y, Z)


def test_rationals_agree_with_prime_field():
    from fibercone.field import CoefficientField
    Q = AmbientRing("xy", CoefficientField(None), relations=["x*y"])
    Fp = AmbientRing("xy", relations=["x*y"])
    for R in (Q, Fp):
        m = R.max_ideal
        assert [finite_quotient_dim(m ** n, m ** (n + 1)) for n in range(4)] == [1, 2, 2, 2]
