"""Model checking over finite probability structures.

Extensions are bitmasks over state indices, computed once per formula and
memoized for the lifetime of a :class:`ModelChecker`. The ``<>`` operator is
answered by a pluggable oracle.
"""
from __future__ import annotations

from fractions import Fraction

from ..dominance import MIXED, WEAK
from ..elimination import eliminate
from ..game import Belief, best_responses, drop
from .formula import (TRUE, And, Believes, ConsidersPossible, Diamond, Formula, Not, Play,
                      ProbAtLeast, ProbGreater, Rat, Top, conjuncts, mk_D_others)


class OracleRejection(ValueError):
    """The oracle cannot decide this satisfiability query."""


class RejectOracle:
    mode = "reject"

    def query(self, body: Formula) -> bool:
        raise OracleRejection("satisfiability queries are disabled")


def match_d_query(game, body: Formula):
    """Recognize ``play_{-j}(opp) & D^k_{-j}`` (either order; D^0 may be ``true``).

    Returns ``(j, opp, k)`` or None.
    """
    if not isinstance(body, And):
        return None
    for plays, rest in ((body.left, body.right), (body.right, body.left)):
        atoms = conjuncts(plays)
        if not all(isinstance(a, Play) for a in atoms):
            continue
        players = [a.player for a in atoms]
        if len(atoms) != game.n - 1 or len(set(players)) != len(players):
            continue
        if any(not 0 <= p < game.n for p in players):
            continue
        j = next(p for p in range(game.n) if p not in players)
        by_player = {a.player: a.strategy for a in atoms}
        opp = tuple(by_player[p] for p in drop(range(game.n), j))
        if rest == TRUE:
            return j, opp, 0
        for k in range(rest.depth + 2):
            if rest == mk_D_others(game, k, j):
                return j, opp, k
    return None


class TheoremOracle:
    """Answers ``<>(play_{-j}(opp) & D^k_{-j})`` from the weak elimination trace.

    The answer is whether every coordinate of ``opp`` survives ``k`` rounds of
    iterated weak (mixed) deletion. Anything else is refused.
    """

    mode = "theorem"

    def __init__(self, game):
        self.game = game
        self.trace = eliminate(game, WEAK, MIXED)

    def query(self, body: Formula) -> bool:
        hit = match_d_query(self.game, body)
        if hit is None:
            raise OracleRejection("theorem oracle only decides <>(play_{-j}(...) & D^k_{-j})")
        j, opp, k = hit
        xk = self.trace.at(k)
        return all(s in xk[p] for p, s in zip(drop(range(self.game.n), j), opp))


class FamilyOracle:
    """Satisfiable iff some state of some supplied structure satisfies the body.

    Sound for ``true`` answers only: a ``false`` means no witness in the family.
    """

    mode = "family"

    def __init__(self, structures):
        self.structures = list(structures)
        self._checkers = None
        self._answers = {}

    def query(self, body: Formula) -> bool:
        if body in self._answers:
            return self._answers[body]
        if self._checkers is None:
            self._checkers = [ModelChecker(s, self) for s in self.structures]
        self._answers[body] = False  # guards against re-entry on the same query
        ans = any(c.extension(body) for c in self._checkers)
        self._answers[body] = ans
        return ans


class ModelChecker:
    def __init__(self, structure, oracle=None):
        self.m = structure
        self.oracle = oracle if oracle is not None else TheoremOracle(structure.game)
        self.full = (1 << len(structure.states)) - 1
        self._memo: dict[Formula, int] = {}
        self._rat: dict[int, int] = {}

    def _rat_mask(self, i: int) -> int:
        if i not in self._rat:
            m, game = self.m, self.m.game
            mask = 0
            for w, dist in enumerate(m.beliefs[i]):
                marg: dict = {}
                for t, p in dist.items():
                    opp = drop(m.profiles[t], i)
                    marg[opp] = marg.get(opp, 0) + p
                if m.profiles[w][i] in best_responses(game, i, Belief(i, marg)):
                    mask |= 1 << w
            self._rat[i] = mask
        return self._rat[i]

    def _mass(self, i: int, w: int, mask: int) -> Fraction:
        return sum((p for t, p in self.m.beliefs[i][w].items() if mask >> t & 1), Fraction(0))

    def extension(self, f: Formula) -> int:
        """Bitmask of the states where ``f`` holds."""
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        m = self.m
        if isinstance(f, Top):
            out = self.full
        elif isinstance(f, Rat):
            self._check_player(f.player)
            out = self._rat_mask(f.player)
        elif isinstance(f, Play):
            self._check_player(f.player)
            out = 0
            for w, prof in enumerate(m.profiles):
                if prof[f.player] == f.strategy:
                    out |= 1 << w
        elif isinstance(f, Not):
            out = self.full & ~self.extension(f.body)
        elif isinstance(f, And):
            out = self.extension(f.left)
            if out:
                out &= self.extension(f.right)
        elif isinstance(f, Believes):
            self._check_player(f.player)
            inner = self.extension(f.body)
            out = 0
            for w, supp in enumerate(m.support_masks[f.player]):
                if not supp & ~inner:
                    out |= 1 << w
        elif isinstance(f, ConsidersPossible):
            self._check_player(f.player)
            inner = self.extension(f.body)
            out = 0
            for w, supp in enumerate(m.support_masks[f.player]):
                if supp & inner:
                    out |= 1 << w
        elif isinstance(f, (ProbAtLeast, ProbGreater)):
            self._check_player(f.player)
            inner = self.extension(f.body)
            out = 0
            strict = isinstance(f, ProbGreater)
            for w in range(len(m.states)):
                mass = self._mass(f.player, w, inner)
                if mass > f.alpha if strict else mass >= f.alpha:
                    out |= 1 << w
        elif isinstance(f, Diamond):
            out = self.full if self.oracle.query(f.body) else 0
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._memo[f] = out
        return out

    def _check_player(self, i):
        if not 0 <= i < self.m.game.n:
            raise ValueError(f"formula mentions unknown player {i + 1}")

    def holds(self, sid: str, f: Formula) -> bool:
        return bool(self.extension(f) >> self.m.index(sid) & 1)

    def satisfying(self, f: Formula) -> list[str]:
        mask = self.extension(f)
        return [sid for w, sid in enumerate(self.m.states) if mask >> w & 1]


def check(structure, state: str, formula: Formula, oracle=None) -> bool:
    return ModelChecker(structure, oracle).holds(state, formula)


def diamond_query(oracle, body: Formula) -> bool:
    return oracle.query(body)


def make_oracle(mode: str, game=None, structures=()):
    if mode == "theorem":
        return TheoremOracle(game)
    if mode in ("family", "witness_family"):
        return FamilyOracle(structures)
    if mode == "reject":
        return RejectOracle()
    raise ValueError(f"unknown oracle mode {mode!r}")
