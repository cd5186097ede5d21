from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from fibercone.oracle import oracle_graded_dim, oracle_membership, oracle_quotient_dim
from fibercone.poly import PolyRing

from conftest import homogeneous_poly

R = PolyRing(("x", "y"))
R3 = PolyRing(("x", "y", "z"))


def test_graded_dim_examples():
    assert oracle_graded_dim([R("x"), R("y")], [], 2) == 3
    assert oracle_graded_dim([R("x^2"), R("y^3")], [], 3) == 3
    assert oracle_graded_dim([R("x^2")], [], 1) == 0


def test_membership_examples():
    assert oracle_membership(R("x^2*y^2"), [R("x^2*y"), R("x*y^2")])
    assert not oracle_membership(R("y"), [R("x")])
    assert oracle_membership(R("x^2 + y^2"), [R("x^2 + y^2"), R("x*y")])


def test_relations_are_divided_out():
    # in k[x,y]/(xy) the degree-2 piece of (x) is spanned by x^2 alone
    assert oracle_graded_dim([R("x")], [R("x*y")], 2) == 1
    assert oracle_quotient_dim([R("x"), R("y")], [R("x^2"), R("x*y"), R("y^2")], [], 3) == 2


def test_rejects_non_homogeneous():
    with pytest.raises(ValueError):
        oracle_graded_dim([R("x^2 + y")], [], 2)


@given(st.lists(homogeneous_poly(R3, 2, 3), min_size=1, max_size=3),
       homogeneous_poly(R3, 2, 3), st.integers(0, 5))
def test_monotone_under_more_generators(gens, extra, d):
    assert oracle_graded_dim(gens, [], d) <= oracle_graded_dim(gens + [extra], [], d)


def test_rational_rank():
    from fibercone.field import CoefficientField
    Q = PolyRing(("x", "y"), CoefficientField(None))
    assert oracle_graded_dim([Q("x + 2*y"), Q("3*x + 6*y")], [], 1) == 1
