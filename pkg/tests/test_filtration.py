from __future__ import annotations

import pytest

from fibercone.errors import FiltrationError, PreconditionError
from fibercone.filtration import (Filtration, filtration_adic, filtration_quotient,
                                  filtration_rescale, filtration_seeded, filtration_term,
                                  is_nilpotent)
from fibercone.ideals import AmbientRing


def test_adic_terms(plane):
    line = AmbientRing("x")
    assert filtration_term(filtration_adic(line.ideal("x")), 2) == line.ideal("x^2")
    F = filtration_adic(plane.ideal("x^2", "x*y", "y^2"))
    assert F.term(2) == plane.max_ideal ** 4
    assert F.term(0).is_unit() and F.term(-1).is_zero()
    assert filtration_adic(plane.max_ideal).term(3) == plane.max_ideal ** 3
    with pytest.raises(PreconditionError):
        filtration_adic(plane.unit_ideal)
    with pytest.raises(ValueError):
        F.term(-2)


def test_seeded_valid(plane):
    m = plane.max_ideal
    F = filtration_seeded([plane.ideal("x^2", "y^2"), m ** 4], 2)
    assert [F.term(n) == m ** (2 * n) for n in range(2, 6)] == [True] * 4
    G = filtration_seeded([m], 1)
    assert all(G.term(n) == filtration_adic(m).term(n) for n in range(4))


def test_seeded_product_violation(plane):
    with pytest.raises(FiltrationError, match="not a filtration") as err:
        filtration_seeded([plane.ideal("x", "y^2"), plane.ideal("x^2", "x*y^2", "y^3")], 2)
    assert err.value.witness == (2, 2)


def test_seeded_odd_powers_are_not_a_filtration(plane):
    # m^3 * m^3 = m^6 is not inside the fourth term m^7
    m = plane.max_ideal
    with pytest.raises(FiltrationError) as err:
        filtration_seeded([m ** 2, m ** 3], 2)
    assert err.value.witness == (2, 2)
    raw = Filtration(plane, "seeded", (m ** 2, m ** 3), 2)
    assert raw.term(4) == m ** 7


def test_seeded_chain_violation(plane):
    with pytest.raises(FiltrationError, match="I_2 is not contained in I_1"):
        filtration_seeded([plane.ideal("x"), plane.ideal("y")], 2)


def test_quotient(plane):
    F = filtration_adic(plane.max_ideal)
    G = filtration_quotient(F, plane.ideal("x"))
    assert G.term(3) == G.ring.ideal("y^3")
    assert filtration_quotient(F, plane.zero_ideal) is F
    H = filtration_quotient(F, plane.max_ideal ** 2)
    assert H.term(2).is_zero()


def test_rescale(plane):
    m = plane.max_ideal
    F = filtration_adic(m)
    G = filtration_rescale(F, 2)
    assert all(G.term(n) == m ** (2 * n) for n in range(1, 5))
    assert filtration_rescale(F, 1) is F
    S = filtration_seeded([plane.ideal("x^2", "y^2"), m ** 4], 2)
    S2 = filtration_rescale(S, 2)
    assert all(S2.term(n) == m ** (4 * n) for n in range(1, 5))
    with pytest.raises(ValueError):
        filtration_rescale(F, 0)


def test_nilpotent():
    B = AmbientRing("xy", relations=["x^2", "x*y", "y^2"])
    assert is_nilpotent(filtration_adic(B.max_ideal)) == (True, 2)
    line = AmbientRing("x")
    assert is_nilpotent(filtration_adic(line.ideal("x"))) == (False, None)
    C = AmbientRing("xy", relations=["y^2"])
    assert is_nilpotent(filtration_adic(C.ideal("y"))) == (True, 2)
