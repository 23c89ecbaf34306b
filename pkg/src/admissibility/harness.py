"""Cross-checks between elimination, beliefs, witness structures and formulas.

Each ``crosscheck_*`` function returns a :class:`Report`; reports merge
associatively, so seeds can be split across workers and recombined.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .dominance import (FULL, MIXED, PURE, STRONG, SUBSET, WEAK, find_dominator,
                        find_justifying_belief)
from .elimination import eliminate, rationalizable_sets, survives, verify_rat1_witness
from .game import NormalFormGame, StrategyRestriction, drop
from .logic.checker import ModelChecker
from .logic.formula import (And, Believes, ConsidersPossible, Not, Rat, conj, mk_C, mk_D, mk_E,
                            rat_all)
from .structures import (build_Mbar, build_Minfty, build_rationalizability_structure,
                         check_appropriate, mbar_violations)


@dataclass(frozen=True)
class GameGenerator:
    seed: int
    players: int = 2
    min_strategies: int = 1
    max_strategies: int = 4
    low: int = -3
    high: int = 3

    def game(self) -> NormalFormGame:
        rng = random.Random(self.seed)
        counts = [rng.randint(self.min_strategies, self.max_strategies) for _ in range(self.players)]
        names = "abcdefghijklmnopqrstuvwxyz"
        strategies = [[f"{names[i]}{k}" for k in range(c)] for i, c in enumerate(counts)]
        table = {}
        for prof in itertools.product(*strategies):
            table[prof] = tuple(rng.randint(self.low, self.high) for _ in range(self.players))
        from fractions import Fraction
        return NormalFormGame(tuple(str(i + 1) for i in range(self.players)),
                              tuple(tuple(s) for s in strategies),
                              {p: tuple(Fraction(v) for v in vec) for p, vec in table.items()})


def random_game(seed: int, players: int = 2, max_strategies: int = 4) -> NormalFormGame:
    return GameGenerator(seed, players, max_strategies=max_strategies).game()


@dataclass
class Report:
    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def count(self, name: str, k: int = 1):
        self.checks[name] = self.checks.get(name, 0) + k

    def note(self, name: str, k: int = 1):
        self.notes[name] = self.notes.get(name, 0) + k

    def fail(self, check: str, label, **detail):
        self.violations.append({"check": check, "game": label, **detail})

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: Report) -> Report:
        out = Report(dict(self.checks), list(self.violations), dict(self.notes))
        for k, v in other.checks.items():
            out.count(k, v)
        for k, v in other.notes.items():
            out.note(k, v)
        out.violations.extend(other.violations)
        return out

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": dict(sorted(self.checks.items())),
            "notes": dict(sorted(self.notes.items())),
            "violations": sorted(self.violations, key=lambda v: (str(v["game"]), v["check"],
                                                                 repr(sorted(v.items())))),
        }


def arising_restrictions(game: NormalFormGame) -> list[StrategyRestriction]:
    seen = []
    for crit in (WEAK, STRONG):
        for r in eliminate(game, crit, MIXED).rounds:
            if r not in seen:
                seen.append(r)
    return seen


def crosscheck_pearce(game: NormalFormGame, label=None, report: Report | None = None) -> Report:
    """Dominated by a mixture iff no justifying belief, for both notions."""
    report = report or Report()
    for h, restr in enumerate(arising_restrictions(game)):
        for i in range(game.n):
            for s in game.strategies[i]:
                for mode, support in ((STRONG, SUBSET), (WEAK, FULL)):
                    dom = find_dominator(game, i, s, restr, mode, MIXED)
                    bel = find_justifying_belief(game, i, s, restr, support)
                    report.count(f"pearce_{mode}")
                    if (dom is None) != (bel is not None):
                        report.fail(f"pearce_{mode}", label, player=i + 1, strategy=s,
                                    restriction=restr.to_json(),
                                    dominator=None if dom is None else dom.to_json(),
                                    belief=None if bel is None else bel.to_json())
                    for cert in (dom, bel):
                        if cert is not None and not cert.replay(game):
                            report.fail("certificate_replay", label, player=i + 1, strategy=s)
                    pure = find_dominator(game, i, s, restr, mode, PURE)
                    if pure is not None and (dom is None or not pure.as_mixed().replay(game)):
                        report.fail("pure_implies_mixed", label, player=i + 1, strategy=s)
    return report


def crosscheck_charwd(game: NormalFormGame, k_max: int, label=None,
                      report: Report | None = None) -> Report:
    """k-round weak survival against D^k witnesses in the M-bar structures.

    Also checks every M-bar state against the D^{k'} clause and conditions
    (1)-(3); condition (4) failures are counted as notes.
    """
    report = report or Report()
    realized = []  # per k': {(i, s)} with some state playing s for i where D^{k'}_i holds
    for kp in range(k_max + 1):
        mbar = build_Mbar(game, kp, verify=False)
        m = mbar.structure
        checker = ModelChecker(m)
        rep = check_appropriate(m)
        report.count("mbar_structures")
        for cond in (1, 2, 3):
            if not rep.passes(cond):
                report.fail(f"mbar_condition_{cond}", label, k=kp,
                            states=sorted({r.state for r in rep.failures(cond)}))
        report.note("mbar_condition_4_failures", len(rep.failures(4)))
        report.note("mbar_reroutes", len(mbar.reroutes))
        bad = mbar_violations(mbar, checker)
        report.count("mbar_clause_states", len(mbar.index))
        for sid, j in bad:
            report.fail("mbar_clause", label, k=kp, state=sid, player=j + 1)
        hits = set()
        for i in range(game.n):
            for sid in checker.satisfying(mk_D(game, kp, i)):
                hits.add((i, m.profile(sid)[i]))
        realized.append(hits)
    for k in range(k_max + 1):
        for i in range(game.n):
            for s in game.strategies[i]:
                lhs = survives(game, i, s, k, WEAK, MIXED)
                rhs = all((i, s) in realized[kp] for kp in range(k + 1))
                report.count("charwd")
                if lhs != rhs:
                    report.fail("charwd", label, k=k, player=i + 1, strategy=s,
                                survives=lhs, witnessed=rhs)
    return report


def crosscheck_charrat(game: NormalFormGame, k_max: int = 5, label=None,
                       report: Report | None = None) -> Report:
    report = report or Report()
    rs = rationalizable_sets(game)
    if not verify_rat1_witness(game, rs.sets, rs.belief_map()):
        report.fail("rat1_witness", label)
        return report
    m = build_rationalizability_structure(game, rs.sets, rs.belief_map())
    report.count("charrat_structures")
    if not check_appropriate(m, strict_condition_4=True).ok:
        report.fail("charrat_appropriate", label)
    checker = ModelChecker(m)
    for k in range(k_max + 1):
        missing = set(m.states) - set(checker.satisfying(mk_E(k, rat_all(game.n), game.n)))
        report.count("charrat_ek_rat")
        if missing:
            report.fail("charrat_ek_rat", label, k=k, states=sorted(missing))
    for i in range(game.n):
        played = {prof[i] for prof in m.profiles}
        for s in game.strategies[i]:
            report.count("charrat_coverage")
            if (s in rs.sets[i]) != (s in played):
                report.fail("charrat_coverage", label, player=i + 1, strategy=s)
    return report


def convergence_obstruction(trace, i: int, lo: int, hi: int):
    """Why no state can satisfy D^r_i for every lo < r <= hi, or None.

    D^r_i puts positive probability on every profile of X^{r-1}_{-i} and
    believes D^{r-1} of the others, so the demands recurse: at depth t each
    reachable player p needs D^{r-t}_p for all r in the range, and those
    agree only if X^{r-t-1}_{-p} is the same set for each of them. Returns
    ``(depth, player, levels)`` for the first disagreement.
    """
    n = len(trace.rounds[0])
    frontier = {i}
    for depth in range(hi):
        levels = [r - depth for r in range(lo + 1, hi + 1) if r - depth >= 1]
        if len(levels) < 2:
            return None
        for p in sorted(frontier):
            supports = {tuple(drop(trace.at(r - 1).sets, p)) for r in levels}
            if len(supports) > 1:
                return depth, p, levels
        frontier = {q for p in frontier for q in range(n) if q != p}
    return None


def crosscheck_convergence(game: NormalFormGame, label=None, report: Report | None = None) -> Report:
    """Past the fixpoint k*, survivors keep D^{k'} witnesses in M-bar^{k*+2}.

    Each level k* < k' <= K must be witnessed on its own. A single state
    carrying all of them at once exists exactly when
    :func:`convergence_obstruction` finds no conflict; both outcomes are
    counted, and a mismatch with that prediction is a violation.
    """
    report = report or Report()
    trace = eliminate(game, WEAK, MIXED)
    kstar = trace.converged_at
    K = kstar + 2
    mbar = build_Mbar(game, K, verify=False)
    checker = ModelChecker(mbar.structure)
    fix = trace.fixpoint
    for i in range(game.n):
        masks = [checker.extension(mk_D(game, kp, i)) for kp in range(kstar + 1, K + 1)]
        joint = masks[0]
        for mk in masks[1:]:
            joint &= mk
        blocked = convergence_obstruction(trace, i, kstar, K)
        for s in fix[i]:
            playing = 0
            for w, prof in enumerate(mbar.structure.profiles):
                if prof[i] == s:
                    playing |= 1 << w
            report.count("convergence_levels", len(masks))
            for kp, mk in zip(range(kstar + 1, K + 1), masks):
                if not mk & playing:
                    report.fail("convergence_level", label, player=i + 1, strategy=s, k=kp)
            found = bool(joint & playing)
            report.count("convergence_simultaneous")
            report.note("convergence_simultaneous_witnessed" if found
                        else "convergence_simultaneous_obstructed")
            if found == (blocked is not None):
                report.fail("convergence_simultaneous", label, player=i + 1, strategy=s,
                            witnessed=found, obstruction=blocked)
    return report


def crosscheck_minfty(game: NormalFormGame, label=None, report: Report | None = None) -> Report:
    """The designated state of M-infinity considers every D^k_i possible, k <= k*+2."""
    report = report or Report()
    trace = eliminate(game, WEAK, MIXED)
    K = trace.converged_at + 2
    for i in range(game.n):
        for s in trace.fixpoint[i]:
            res = build_Minfty(game, i, s, K, verify=False)
            checker = ModelChecker(res.structure)
            if not check_appropriate(res.structure).ok:
                report.fail("minfty_appropriate", label, player=i + 1, strategy=s)
            for k in range(K + 1):
                report.count("minfty")
                if not checker.holds(res.state, ConsidersPossible(i, mk_D(game, k, i))):
                    report.fail("minfty", label, player=i + 1, strategy=s, k=k)
    return report


def logic_sanity(structure, label=None, k_max: int = 4, report: Report | None = None,
                 extra_formulas=()) -> Report:
    """<B_i> vs !B_i!, D^k => C^k, and the C^k unrolling (on structures meeting condition 4)."""
    report = report or Report()
    game = structure.game
    n = game.n
    checker = ModelChecker(structure)
    full = checker.full
    rat = rat_all(n)
    sample = [mk_E(k, rat, n) for k in range(k_max + 1)]
    sample += [mk_D(game, k, j) for k in range(k_max + 1) for j in range(n)]
    sample += [mk_C(k, j, n) for k in range(k_max + 1) for j in range(n)]
    sample += list(extra_formulas)
    for phi in sample:
        for i in range(n):
            report.count("sanity_dual")
            lhs = checker.extension(ConsidersPossible(i, phi))
            rhs = checker.extension(Not(Believes(i, Not(phi))))
            if lhs != rhs:
                report.fail("sanity_dual", label, player=i + 1, formula_depth=phi.depth)
    for k in range(k_max + 1):
        for j in range(n):
            report.count("sanity_d_implies_c")
            d = checker.extension(mk_D(game, k, j))
            c = checker.extension(mk_C(k, j, n))
            if d & ~c & full:
                report.fail("sanity_d_implies_c", label, k=k, player=j + 1)
    for k in range(k_max):
        e_next = checker.extension(mk_E(k + 1, rat, n))
        for i in range(n):
            report.count("sanity_monotone_e")
            if e_next & ~checker.extension(Believes(i, mk_E(k, rat, n))):
                report.fail("sanity_monotone_e", label, k=k, player=i + 1)
    if check_appropriate(structure, strict_condition_4=True).ok:
        for k in range(2, k_max + 1):
            for j in range(n):
                report.count("sanity_c_unrolling")
                body = conj(mk_E(e, rat, n) for e in range(k - 1))
                alt = checker.extension(And(Rat(j), Believes(j, body)))
                if alt != checker.extension(mk_C(k, j, n)):
                    report.fail("sanity_c_unrolling", label, k=k, player=j + 1)
    else:
        report.note("sanity_c_unrolling_skipped_condition_4")
    return report


def brute_force_trace(game: NormalFormGame, criterion: str) -> list[tuple]:
    """Pure-class elimination straight from the definitions, by exhaustive scanning."""
    n = game.n
    current = [list(s) for s in game.strategies]
    rounds = [tuple(tuple(s) for s in current)]
    while True:
        nxt = []
        for i in range(n):
            others = [current[j] for j in range(n) if j != i]
            keep = []
            for s in current[i]:
                dominated = False
                for t in game.strategies[i]:
                    if t == s:
                        continue
                    ge = gt = True
                    some = False
                    for opp in itertools.product(*others):
                        full_t = opp[:i] + (t,) + opp[i:]
                        full_s = opp[:i] + (s,) + opp[i:]
                        a, b = game.payoffs[full_t][i], game.payoffs[full_s][i]
                        ge = ge and a >= b
                        gt = gt and a > b
                        some = some or a > b
                    if (criterion == STRONG and gt) or (criterion == WEAK and ge and some):
                        dominated = True
                        break
                if not dominated:
                    keep.append(s)
            nxt.append(keep)
        if nxt == current:
            return rounds
        current = nxt
        rounds.append(tuple(tuple(s) for s in current))


def crosscheck_elimination(game: NormalFormGame, label=None, report: Report | None = None) -> Report:
    """Pure traces against brute force; mixed traces by certificate replay."""
    report = report or Report()
    for crit in (WEAK, STRONG):
        report.count("elimination_pure")
        got = [r.sets for r in eliminate(game, crit, PURE).rounds]
        want = brute_force_trace(game, crit)
        if got != want:
            report.fail("elimination_pure", label, criterion=crit, got=got, want=want)
        trace = eliminate(game, crit, MIXED)
        support = FULL if crit == WEAK else SUBSET
        for h, step in enumerate(trace.removals):
            for i, removed in step.items():
                for s, cert in removed:
                    report.count("elimination_mixed_replay")
                    if not cert.replay(game) or set(cert.opponents) != set(trace.rounds[h].opponents(i)):
                        report.fail("elimination_mixed_replay", label, round=h, player=i + 1, strategy=s)
        for h in range(len(trace.rounds)):
            nxt = trace.at(h + 1)
            for i in range(game.n):
                for s in nxt[i]:
                    report.count("elimination_mixed_survivor")
                    cert = find_justifying_belief(game, i, s, trace.rounds[h], support)
                    if cert is None or not cert.replay(game):
                        report.fail("elimination_mixed_survivor", label, round=h, player=i + 1, strategy=s)
        for r in trace.rounds:
            if not all(r.sets):
                report.fail("elimination_nonempty", label, criterion=crit)
    return report


def full_suite(game: NormalFormGame, label, k_max: int = 3, charrat_k: int = 5,
               with_minfty: bool = False) -> Report:
    report = Report()
    crosscheck_pearce(game, label, report)
    crosscheck_elimination(game, label, report)
    crosscheck_charwd(game, k_max, label, report)
    crosscheck_charrat(game, charrat_k, label, report)
    crosscheck_convergence(game, label, report)
    if with_minfty:
        crosscheck_minfty(game, label, report)
    report.count("games")
    return report


def _seed_job(args):
    seed, players, max_strategies, k_max = args
    game = GameGenerator(seed, players, max_strategies=max_strategies).game()
    return full_suite(game, seed, k_max=k_max)


def verify(seeds, players: int = 2, max_strategies: int = 4, k_max: int = 3,
           jobs: int = 1) -> Report:
    """Run the full suite over seeded random games; output does not depend on ``jobs``."""
    args = [(s, players, max_strategies, k_max) for s in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_seed_job, args, chunksize=4))
    else:
        parts = [_seed_job(a) for a in args]
    out = Report()
    for p in parts:
        out = out.merge(p)
    return out


def verify_fixed_suite() -> Report:
    from .suite import FIXED_SUITE
    out = Report()
    for name, make in FIXED_SUITE.items():
        game = make()
        k = eliminate(game, WEAK, MIXED).converged_at + 2
        out = out.merge(full_suite(game, name, k_max=k, with_minfty=True))
    return out


__all__ = [
    "GameGenerator", "Report", "brute_force_trace", "convergence_obstruction",
    "crosscheck_charrat", "crosscheck_charwd", "crosscheck_convergence", "crosscheck_elimination",
    "crosscheck_minfty", "crosscheck_pearce", "full_suite", "logic_sanity", "random_game",
    "verify", "verify_fixed_suite",
]
