from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from admissibility.logic import (TRUE, And, Believes, ConsidersPossible, Diamond, FamilyOracle,
                                 FormulaSyntaxError, ModelChecker, Not, OracleRejection, Play,
                                 ProbAtLeast, ProbGreater, Rat, RejectOracle, TheoremOracle,
                                 UnknownIdError, check, implies, make_oracle, match_d_query, mk_C,
                                 mk_D, mk_D_others, mk_E, parse, play_others, rat_all, render,
                                 strongly_admissible_level)
from admissibility.structures import ProbabilityStructure, build_Mbar, build_rationalizability_structure
from admissibility.elimination import rationalizable_sets
from admissibility.suite import g2, prisoners_dilemma


def test_parse_examples():
    # text ids are 1-based, the AST is 0-based
    assert parse("RAT_1 & B_2 play_1(T)") == And(Rat(0), Believes(1, Play(0, "T")))
    assert parse("pr_1(play_2(L)) >= 1/2") == ProbAtLeast(0, Play(1, "L"), Fraction(1, 2))
    assert parse("<B_1> <> play_2(R)") == ConsidersPossible(0, Diamond(Play(1, "R")))
    assert parse("pr_2(true) > 0") == ProbGreater(1, TRUE, Fraction(0))


def test_precedence_and_associativity():
    assert parse("!RAT_1 & RAT_2") == And(Not(Rat(0)), Rat(1))
    assert parse("RAT_1 & RAT_2 & true") == And(And(Rat(0), Rat(1)), TRUE)
    assert parse("RAT_1 -> RAT_2 -> true") == implies(Rat(0), implies(Rat(1), TRUE))
    assert parse("B_1 RAT_2 & RAT_1") == And(Believes(0, Rat(1)), Rat(0))


@pytest.mark.parametrize("text", [
    "", "RAT_1 &", "B_ RAT_1", "pr_1(true) >= 3/2", "(RAT_1", "RAT_1)", "play_1()", "RAT_0",
    "pr_1(true) = 1/2",
])
def test_parse_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_unknown_ids_against_game():
    with pytest.raises(UnknownIdError):
        parse("play_2(X)", g2())
    with pytest.raises(UnknownIdError):
        parse("RAT_3", g2())
    assert parse("play_2(X)") == Play(1, "X")


formulas = st.recursive(
    st.sampled_from([TRUE, Rat(0), Rat(1), Play(0, "T"), Play(1, "R")]),
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda p: And(*p)),
        st.tuples(st.integers(0, 1), sub).map(lambda p: Believes(*p)),
        st.tuples(st.integers(0, 1), sub).map(lambda p: ConsidersPossible(*p)),
        sub.map(Diamond),
        st.tuples(st.integers(0, 1), sub, st.fractions(0, 1, max_denominator=7)).map(
            lambda p: ProbAtLeast(*p)),
        st.tuples(sub, sub).map(lambda p: implies(*p)),
    ),
    max_leaves=8,
)


@given(formulas)
def test_render_round_trip(f):
    assert parse(render(f)) == f


def test_builders():
    g = g2()
    assert mk_D(g, 0, 1) == TRUE and mk_C(0, 0, 2) == TRUE
    assert mk_C(2, 0, 2) == And(Rat(0), Believes(0, And(Rat(1), Believes(1, TRUE))))
    assert mk_E(0, Rat(0), 2) == Rat(0)
    e2 = mk_E(2, rat_all(2), 2)
    assert parse(render(e2)) == e2 and e2.depth == 2
    d2 = mk_D(g, 2, 1)
    assert parse(render(d2), g) == d2
    with pytest.raises(ValueError):
        mk_D(g, -1, 0)


def test_d1_simplifies_to_full_support_rationality():
    # D^1_j: RAT_j & B_j true & (<>(play & true) -> <B_j> play) for each opponent profile
    g = g2()
    m = build_Mbar(g, 1).structure
    checker = ModelChecker(m)
    expect = And(Rat(1), And(ConsidersPossible(1, Play(0, "T")), ConsidersPossible(1, Play(0, "B"))))
    assert checker.extension(mk_D(g, 1, 1)) == checker.extension(expect)


def test_theorem_oracle_examples():
    g = g2()
    o = TheoremOracle(g)
    assert o.query(And(play_others(1, ("T",)), mk_D_others(g, 1, 1)))
    assert not o.query(And(play_others(0, ("R",)), mk_D_others(g, 2, 0)))
    for opp in g.opponent_profiles(0):
        assert o.query(And(play_others(0, opp), TRUE))
    assert match_d_query(g, And(mk_D_others(g, 2, 0), play_others(0, ("L",)))) == (0, ("L",), 2)
    with pytest.raises(OracleRejection):
        o.query(Rat(0))
    with pytest.raises(OracleRejection):
        RejectOracle().query(TRUE)
    with pytest.raises(ValueError):
        make_oracle("nope", g)


def test_checker_spec_examples():
    pd = prisoners_dilemma()
    rs = rationalizable_sets(pd)
    m = build_rationalizability_structure(pd, rs.sets, rs.belief_map())
    assert check(m, m.states[0], mk_E(5, rat_all(2), 2))
    mb = build_Mbar(g2(), 2)
    assert check(mb.structure, "(2,1,(T,L))", mk_D(g2(), 2, 1))
    for sid in mb.structure.states:
        assert check(mb.structure, sid, TRUE, RejectOracle())


def test_probability_operators():
    g = g2()
    states = ["a", "b", "c"]
    profiles = {"a": ("T", "L"), "b": ("T", "R"), "c": ("B", "L")}
    half = {"a": Fraction(1, 2), "b": Fraction(1, 2)}
    m = ProbabilityStructure.from_ids(g, states, profiles, [
        {"a": half, "b": half, "c": {"c": 1}},
        {"a": {"a": Fraction(1, 3), "c": Fraction(2, 3)}, "b": {"b": 1}, "c": {"a": 1}},
    ])
    c = ModelChecker(m, RejectOracle())
    assert c.holds("a", parse("pr_1(play_2(L)) >= 1/2"))
    assert not c.holds("a", parse("pr_1(play_2(L)) > 1/2"))
    assert c.holds("a", parse("pr_2(play_1(B)) > 1/2"))
    assert c.holds("a", parse("<B_1> play_2(R) & !B_1 play_2(R)"))
    assert c.satisfying(parse("B_2 play_1(T)")) == ["b", "c"]
    # player 1 at a: belief 1/2 on L and 1/2 on R -> T earns 1, B earns 1/2
    assert c.holds("a", Rat(0))
    with pytest.raises(OracleRejection):
        c.extension(Diamond(TRUE))
    with pytest.raises(ValueError):
        c.extension(Rat(4))


def test_family_oracle():
    g = g2()
    fam = FamilyOracle([build_Mbar(g, 1).structure])
    assert fam.query(And(Play(0, "B"), Rat(1)))
    assert not fam.query(And(Play(0, "B"), Not(Play(0, "B"))))


def test_strong_admissibility_oracle():
    assert strongly_admissible_level(g2(), 1, "R", 1)
    assert not strongly_admissible_level(g2(), 1, "R", 2)
    assert strongly_admissible_level(g2(), 0, "B", 0)
