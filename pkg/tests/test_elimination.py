import math

import pytest
from hypothesis import given, strategies as st

from admissibility.dominance import MIXED, PURE, STRONG, WEAK
from admissibility.elimination import (eliminate, rationalizable_sets, survives,
                                       verify_rat1_witness)
from admissibility.game import Belief, GameError
from admissibility.harness import brute_force_trace, random_game
from admissibility.suite import g2, matching_pennies, prisoners_dilemma, zero_game


def test_pd_strong():
    t = eliminate(prisoners_dilemma(), STRONG, MIXED)
    assert t.at(1).sets == (("D",), ("D",)) and t.converged_at == 1


def test_g2_weak():
    t = eliminate(g2(), WEAK, MIXED)
    assert [r.sets for r in t.rounds] == [
        (("T", "B"), ("L", "R")), (("T",), ("L", "R")), (("T",), ("L",))]
    assert t.converged_at == 2
    assert t.at(7) == t.at(math.inf) == t.fixpoint
    assert [s for s, _ in t.removals[0][0]] == ["B"]
    assert [s for s, _ in t.removals[1][1]] == ["R"]


def test_zero_game_is_stable():
    t = eliminate(zero_game(3, 3), WEAK, MIXED)
    assert t.converged_at == 0 and t.fixpoint.sets == zero_game(3, 3).strategies


def test_depth_limit():
    t = eliminate(g2(), WEAK, MIXED, depth=1)
    assert len(t.rounds) == 2 and t.converged_at is None
    with pytest.raises(ValueError):
        t.at(2)


def test_survives():
    assert survives(g2(), 1, "R", 1)
    assert not survives(g2(), 1, "R", 2)
    assert survives(g2(), 0, "B", 0)


def test_rationalizable():
    rs = rationalizable_sets(prisoners_dilemma())
    assert rs.sets.sets == (("D",), ("D",))
    rs = rationalizable_sets(matching_pennies())
    assert rs.sets.sets == (("H", "T"), ("H", "T"))
    assert rationalizable_sets(g2()).sets.sets == (("T", "B"), ("L", "R"))
    for (i, s), cert in rs.beliefs.items():
        assert cert.replay(matching_pennies())


def test_rat1_witness():
    pd = prisoners_dilemma()
    rs = rationalizable_sets(pd)
    assert verify_rat1_witness(pd, rs.sets, rs.belief_map())
    bad = {(0, "C"): Belief.point(0, ("C",)), (1, "C"): Belief.point(1, ("C",))}
    assert not verify_rat1_witness(pd, [["C"], ["C"]], bad)
    nash = {(0, "D"): Belief.point(0, ("D",)), (1, "D"): Belief.point(1, ("D",))}
    assert verify_rat1_witness(pd, [["D"], ["D"]], nash)
    with pytest.raises(GameError):
        verify_rat1_witness(pd, [["D"], ["D"]], {})


@given(st.integers(0, 10_000))
def test_pure_traces_match_brute_force(seed):
    g = random_game(seed)
    for crit in (WEAK, STRONG):
        assert [r.sets for r in eliminate(g, crit, PURE).rounds] == brute_force_trace(g, crit)


@given(st.integers(0, 10_000))
def test_trace_shape(seed):
    g = random_game(seed)
    for crit in (WEAK, STRONG):
        mixed = eliminate(g, crit, MIXED)
        pure = eliminate(g, crit, PURE)
        for a, b in zip(mixed.rounds, mixed.rounds[1:]):
            assert b.issubset(a) and all(b.sets)
        if crit == STRONG:  # mixed strong deletion removes at least as much, round by round
            for k in range(max(len(mixed.rounds), len(pure.rounds))):
                assert mixed.at(k).issubset(pure.at(k))
        assert mixed.converged_at <= sum(len(s) for s in g.strategies)
    assert eliminate(g, STRONG, MIXED).fixpoint.issubset(eliminate(g, STRONG, PURE).fixpoint)
