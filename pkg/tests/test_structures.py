import json
from fractions import Fraction

import pytest

from admissibility.elimination import rationalizable_sets
from admissibility.logic import ConsidersPossible, ModelChecker, Play, Rat, conj, mk_D, mk_E, rat_all
from admissibility.structures import (ProbabilityStructure, StructureError, add_null_state,
                                      build_Mbar, build_Minfty, build_rationalizability_structure,
                                      check_appropriate, disjoint_union, load_structure,
                                      mbar_violations, merge_conjunction)
from admissibility.game import Belief
from admissibility.suite import g2, matching_pennies, prisoners_dilemma, zero_game


def loop(game, profile):
    return ProbabilityStructure.from_ids(game, ["w"], {"w": profile},
                                         [{"w": {"w": 1}} for _ in range(game.n)])


def test_single_state_appropriate():
    rep = check_appropriate(loop(g2(), ("T", "L")), strict_condition_4=True)
    assert rep.ok and all(rep.passes(c) for c in (1, 2, 3, 4))


def test_condition_2_failure_is_reported():
    g = g2()
    m = ProbabilityStructure.from_ids(g, ["a", "b"], {"a": ("T", "L"), "b": ("B", "L")}, [
        {"a": {"b": 1}, "b": {"b": 1}}, {"a": {"a": 1}, "b": {"b": 1}}])
    rep = check_appropriate(m)
    assert not rep.ok
    assert [(r.state, r.player, r.event) for r in rep.failures(2)] == [("a", 0, ("b",))]


def test_structure_validation():
    g = g2()
    with pytest.raises(StructureError):
        ProbabilityStructure.from_ids(g, ["w"], {"w": ("T", "L")}, [{"w": {"w": Fraction(1, 2)}}] * 2)
    with pytest.raises(StructureError):
        ProbabilityStructure.from_ids(g, ["w"], {"w": ("T", "Z")}, [{"w": {"w": 1}}] * 2)
    with pytest.raises(StructureError):
        ProbabilityStructure.from_ids(g, ["w"], {"w": ("T", "L")}, [{"w": {"v": 1}}] * 2)


def test_rationalizability_structures():
    pd = prisoners_dilemma()
    rs = rationalizable_sets(pd)
    m = build_rationalizability_structure(pd, rs.sets, rs.belief_map())
    assert len(m) == 1 and check_appropriate(m, strict_condition_4=True).ok
    mp = matching_pennies()
    rs = rationalizable_sets(mp)
    m = build_rationalizability_structure(mp, rs.sets, rs.belief_map())
    assert len(m) == 4
    c = ModelChecker(m)
    assert c.extension(mk_E(3, rat_all(2), 2)) == c.full
    with pytest.raises(StructureError):
        bad = {(0, "C"): Belief.point(0, ("C",)), (1, "C"): Belief.point(1, ("C",))}
        build_rationalizability_structure(pd, [["C"], ["C"]], bad)


def test_mbar_g2():
    g = g2()
    m0 = build_Mbar(g, 0)
    assert len(m0.structure) == 8
    c0 = ModelChecker(m0.structure)
    assert c0.extension(mk_D(g, 0, 0)) == c0.full
    m1 = build_Mbar(g, 1)
    assert len(m1.structure) == 2 * (4 + 2)
    c1 = ModelChecker(m1.structure)
    for (level, i, prof), sid in m1.index.items():
        if level == 1 and i == 0:
            assert c1.holds(sid, mk_D(g, 1, 1))
    m2 = build_Mbar(g, 2)
    assert ModelChecker(m2.structure).holds("(2,1,(T,L))", mk_D(g, 2, 1))
    rep = check_appropriate(m2.structure)
    assert all(rep.passes(c) for c in (1, 2, 3)) and not rep.passes(4)
    assert rep.ok and rep.warnings
    assert mbar_violations(m2) == []


def test_minfty():
    g = g2()
    res = build_Minfty(g, 0, "T", 2)
    c = ModelChecker(res.structure)
    for k in (1, 2):
        assert c.holds(res.state, ConsidersPossible(0, mk_D(g, k, 0)))
    z = zero_game(2, 2)
    for i in range(2):
        for s in z.strategies[i]:
            r = build_Minfty(z, i, s, 3)
            cc = ModelChecker(r.structure)
            assert all(cc.holds(r.state, ConsidersPossible(i, mk_D(z, k, i))) for k in range(4))
    with pytest.raises(StructureError):
        build_Minfty(g, 0, "B", 1)


def test_null_state():
    g = g2()
    m, new = add_null_state(loop(g, ("T", "L")), "w")
    assert len(m) == 2 and new == "w'"
    c = ModelChecker(m)
    assert c.holds("w", Rat(0)) == c.holds(new, Rat(0))
    assert c.holds("w", Rat(1)) == c.holds(new, Rat(1))
    m2, new2 = add_null_state(m, "w")
    assert len(m2) == 3 and new2 not in ("w", new)
    assert m2.belief(0, "w") == {"w": 1}
    mb = build_Mbar(g, 1)
    sid = "(1,1,(T,L))"
    dup, d = add_null_state(mb.structure, sid)
    before = ModelChecker(mb.structure)
    after = ModelChecker(dup)
    for j in range(2):
        for k in range(2):
            f = mk_D(g, k, j)
            assert before.holds(sid, f) == after.holds(sid, f) == after.holds(d, f)


def test_union_and_merge():
    pd = prisoners_dilemma()
    a, b = loop(pd, ("D", "D")), loop(pd, ("D", "D"))
    u, renames = disjoint_union([a, b])
    assert len(u) == 2 and renames[0]["w"] != renames[1]["w"]
    m, omegas = merge_conjunction(pd, [(a, "w"), (b, "w")])
    c = ModelChecker(m)
    goal = conj([Play(0, "D"), Rat(0), Play(1, "D"), Rat(1)])
    assert all(c.holds(o, goal) for o in omegas)
    with pytest.raises(StructureError):
        merge_conjunction(pd, [(a, "w"), (loop(g2(), ("T", "L")), "w")])
    with pytest.raises(StructureError):
        disjoint_union([a, loop(g2(), ("T", "L"))])


def test_merge_mixed_witnesses():
    g = g2()
    w1 = build_Minfty(g, 0, "T", 2)
    w2 = build_Minfty(g, 1, "L", 2)
    m, omegas = merge_conjunction(g, [(w1.structure, w1.state), (w2.structure, w2.state)])
    c = ModelChecker(m)
    for o in omegas:
        for k in range(3):
            assert c.holds(o, ConsidersPossible(0, mk_D(g, k, 0)))
            assert c.holds(o, ConsidersPossible(1, mk_D(g, k, 1)))
        assert m.profile(o) == ("T", "L")


def test_json_round_trip(tmp_path):
    g = g2()
    m = build_Mbar(g, 1).structure
    (tmp_path / "g.json").write_text(json.dumps(g.to_json()))
    (tmp_path / "m.json").write_text(json.dumps(m.to_json(game_ref="g.json")))
    again = load_structure(tmp_path / "m.json")
    assert again.states == m.states and again.beliefs == m.beliefs and again.profiles == m.profiles
    inline = ProbabilityStructure.from_json(m.to_json())
    assert inline.beliefs == m.beliefs
    with pytest.raises(StructureError):
        ProbabilityStructure.from_json({"game": g.to_json(), "states": [{"id": "x"}]})
