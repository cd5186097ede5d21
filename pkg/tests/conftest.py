from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from fibercone import corpus
from fibercone.ideals import AmbientRing
from fibercone.poly import monomials_of_degree
from fibercone.report import Config, build
from fibercone.scenario import parse_scenario

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

P = 32003


@pytest.fixture
def plane():
    return AmbientRing("xy")


@pytest.fixture
def space():
    return AmbientRing("xyz")


def corpus_instances(kinds=("report", "multiplicity", "cm")):
    """(label, F, J) for every corpus task of the given kinds, deduplicated."""
    out, seen = [], set()
    for name in corpus.names():
        s = parse_scenario(corpus.text(name))
        ws = build(s, Config(seed=1))
        for t in s.tasks:
            if t.kind not in kinds:
                continue
            F = ws.filtrations[t.args[0]]
            J = (F.ring.ideal(list(ws.ideals[t.args[1]].gens)) if len(t.args) > 1
                 else F.ring.max_ideal)
            key = (name, t.args)
            if key not in seen:
                seen.add(key)
                out.append((f"{name}:{'/'.join(t.args)}", F, J))
    return out


def corpus_ideals():
    """Every ideal declared in the corpus, with its ring."""
    out = []
    for name in corpus.names():
        s = parse_scenario(corpus.text(name))
        ws = build(s, Config(seed=1))
        for iname, I in ws.ideals.items():
            out.append((f"{name}:{iname}", I))
    return out


def homogeneous_poly(ring, max_degree=3, max_terms=4):
    """Strategy for nonzero homogeneous polynomials of a PolyRing."""
    n = ring.nvars

    @st.composite
    def strat(draw):
        d = draw(st.integers(1, max_degree))
        monos = monomials_of_degree(n, d)
        chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms,
                               unique=True))
        coeffs = draw(st.lists(st.integers(1, P - 1), min_size=len(chosen),
                               max_size=len(chosen)))
        return ring.from_terms(dict(zip(chosen, coeffs)))

    return strat()
