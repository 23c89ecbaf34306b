from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from admissibility import NormalFormGame
from admissibility.dominance import (FULL, MIXED, PURE, STRONG, SUBSET, WEAK, find_dominator,
                                     find_justifying_belief)
from admissibility.game import StrategyRestriction
from admissibility.suite import g1, prisoners_dilemma, single_strategy_game


def test_pd_strong_pure():
    cert = find_dominator(prisoners_dilemma(), 0, "C", mode=STRONG, klass=PURE)
    assert cert.dominator == "D" and cert.replay(prisoners_dilemma())


def test_g1_weak_not_strong():
    g = g1()
    weak = find_dominator(g, 0, "B", mode=WEAK, klass=PURE)
    assert weak.dominator == "T" and weak.witness == ("R",)
    assert find_dominator(g, 0, "B", mode=STRONG, klass=PURE) is None
    assert find_dominator(g, 0, "B", mode=STRONG, klass=MIXED) is None
    assert find_dominator(g, 0, "B", mode=WEAK, klass=MIXED).replay(g)


def test_singleton_has_no_dominator():
    g = single_strategy_game()
    for mode in (WEAK, STRONG):
        for klass in (PURE, MIXED):
            assert find_dominator(g, 0, "a", mode=mode, klass=klass) is None


def test_beliefs():
    pd = prisoners_dilemma()
    cert = find_justifying_belief(pd, 0, "D", support=FULL)
    assert cert.belief.support == {("C",), ("D",)} and cert.replay(pd)
    assert find_justifying_belief(g1(), 0, "B", support=FULL) is None
    cert = find_justifying_belief(g1(), 0, "B", support=SUBSET)
    assert cert.belief.weights == {("L",): 1}


def test_mixture_beats_every_pure_strategy():
    # M is strongly dominated by 1/2 U + 1/2 D but by neither pure strategy.
    g = NormalFormGame.bimatrix(["U", "M", "D"], ["L", "R"],
                                [[3, 0], [1, 1], [0, 3]], [[0, 0], [0, 0], [0, 0]])
    assert find_dominator(g, 0, "M", mode=STRONG, klass=PURE) is None
    cert = find_dominator(g, 0, "M", mode=STRONG, klass=MIXED)
    assert cert is not None and cert.replay(g)
    assert find_justifying_belief(g, 0, "M", support=SUBSET) is None


def test_restriction_matters():
    g = g1()
    only_l = StrategyRestriction.of(g, [["T", "B"], ["L"]])
    assert find_dominator(g, 0, "B", only_l, WEAK, MIXED) is None
    assert find_justifying_belief(g, 0, "B", only_l, FULL) is not None


def test_tampered_certificate_fails_replay():
    g = g1()
    cert = find_dominator(g, 0, "B", mode=WEAK, klass=PURE)
    from dataclasses import replace
    assert not replace(cert, witness=("L",)).replay(g)


small = st.integers(-3, 3)


@st.composite
def games(draw):
    m, n = draw(st.integers(1, 4)), draw(st.integers(1, 4))
    u1 = [[draw(small) for _ in range(n)] for _ in range(m)]
    u2 = [[draw(small) for _ in range(n)] for _ in range(m)]
    return NormalFormGame.bimatrix([f"r{k}" for k in range(m)], [f"c{k}" for k in range(n)], u1, u2)


@given(games(), st.integers(0, 1))
def test_pearce_equivalence(g, i):
    for s in g.strategies[i]:
        for mode, support in ((STRONG, SUBSET), (WEAK, FULL)):
            dom = find_dominator(g, i, s, mode=mode, klass=MIXED)
            bel = find_justifying_belief(g, i, s, support=support)
            assert (dom is None) == (bel is not None)
            for cert in (dom, bel):
                assert cert is None or cert.replay(g)


@given(games(), st.integers(0, 1))
def test_pure_dominance_implies_mixed_and_strong_implies_weak(g, i):
    for s in g.strategies[i]:
        if find_dominator(g, i, s, mode=STRONG, klass=PURE):
            assert find_dominator(g, i, s, mode=WEAK, klass=PURE)
        for mode in (WEAK, STRONG):
            if find_dominator(g, i, s, mode=mode, klass=PURE):
                assert find_dominator(g, i, s, mode=mode, klass=MIXED)


@pytest.mark.parametrize("backend", ["python", "cython"])
def test_backend_choice(backend):
    from admissibility import lp
    if backend not in lp.KERNELS:
        pytest.skip("compiled kernel not built")
    cert = find_justifying_belief(prisoners_dilemma(), 0, "D", support=FULL, backend=backend)
    assert cert.belief.weights == {("C",): Fraction(1, 2), ("D",): Fraction(1, 2)}
