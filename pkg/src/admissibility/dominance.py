"""Strong and weak dominance, and the beliefs that rule it out.

Every positive answer comes with a certificate that can be replayed against
the game using nothing but payoff lookups.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .game import (Belief, GameError, MixedStrategy, NormalFormGame, StrategyRestriction,
                   best_responses, format_rational, insert)
from .lp import GE, EQ, LinearProgram, solve

STRONG, WEAK = "strong", "weak"
PURE, MIXED = "pure", "mixed"
SUBSET, FULL = "subset", "full"


def _opponents(game: NormalFormGame, i: int, restriction: StrategyRestriction | None):
    if restriction is None:
        restriction = game.full_restriction()
    for j, sub in enumerate(restriction.sets):
        if j != i and not sub:
            raise GameError(f"restriction is empty for opponent {j + 1}")
    return restriction.opponents(i)


@dataclass(frozen=True)
class DominanceCertificate:
    player: int
    dominated: str
    dominator: Union[str, MixedStrategy]
    opponents: tuple  # the opponent profiles of the restriction
    mode: str
    witness: Optional[tuple] = None  # a profile with strict gain, weak mode only

    def _dominator_payoff(self, game, opp):
        if isinstance(self.dominator, str):
            return game.payoff(self.player, insert(opp, self.player, self.dominator))
        return self.dominator.payoff(game, opp)

    def replay(self, game: NormalFormGame) -> bool:
        """Recheck every inequality of the dominance definition."""
        if self.dominator == self.dominated:
            return False
        if isinstance(self.dominator, MixedStrategy):
            if self.dominator.player != self.player or self.dominated in self.dominator.weights:
                return False
        if not self.opponents:
            return False
        gains = []
        for opp in self.opponents:
            gains.append(self._dominator_payoff(game, opp)
                         - game.payoff(self.player, insert(opp, self.player, self.dominated)))
        if self.mode == STRONG:
            return all(g > 0 for g in gains)
        if self.witness not in self.opponents:
            return False
        strict = self._dominator_payoff(game, self.witness) > game.payoff(
            self.player, insert(self.witness, self.player, self.dominated))
        return all(g >= 0 for g in gains) and strict

    def as_mixed(self) -> DominanceCertificate:
        """Embed a pure certificate as a point-mass mixed one."""
        if isinstance(self.dominator, MixedStrategy):
            return self
        return DominanceCertificate(self.player, self.dominated,
                                    MixedStrategy.pure(self.player, self.dominator),
                                    self.opponents, self.mode, self.witness)

    def to_json(self) -> dict:
        dom = self.dominator if isinstance(self.dominator, str) else self.dominator.to_json()
        out = {"strategy": self.dominated, "dominator": dom, "mode": self.mode}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class BeliefCertificate:
    strategy: str
    belief: Belief
    support_mode: str
    opponents: tuple

    def replay(self, game: NormalFormGame) -> bool:
        support = self.belief.support
        allowed = set(self.opponents)
        if self.support_mode == FULL:
            if support != allowed:
                return False
        elif not support <= allowed:
            return False
        return self.strategy in best_responses(game, self.belief.player, self.belief)

    def to_json(self) -> dict:
        return {"strategy": self.strategy, "support": self.support_mode, **self.belief.to_json()}


def _gain_vector(game, i, s, t, opps):
    return [game.payoff(i, insert(o, i, s)) - game.payoff(i, insert(o, i, t)) for o in opps]


def _pure_dominator(game, i, sigma, opps, mode):
    for cand in game.strategies[i]:
        if cand == sigma:
            continue
        gains = _gain_vector(game, i, cand, sigma, opps)
        if mode == STRONG and all(g > 0 for g in gains):
            return DominanceCertificate(i, sigma, cand, tuple(opps), mode)
        if mode == WEAK and all(g >= 0 for g in gains) and any(g > 0 for g in gains):
            witness = opps[next(k for k, g in enumerate(gains) if g > 0)]
            return DominanceCertificate(i, sigma, cand, tuple(opps), mode, witness)
    return None


def _drop_self(p: dict, sigma: str) -> dict:
    # (p - a*e_sigma)/(1 - a) dominates whenever p does
    rest = 1 - p.get(sigma, 0)
    return {s: w / rest for s, w in p.items() if s != sigma and w}


def _mixed_dominator(game, i, sigma, opps, mode, backend=None):
    strats = game.strategies[i]
    m = len(strats)
    table = [[game.payoff(i, insert(o, i, s)) for s in strats] for o in opps]
    base = [game.payoff(i, insert(o, i, sigma)) for o in opps]
    if mode == STRONG:
        # max eps  s.t.  p.u(o) - eps >= u(sigma, o),  sum p = 1
        lp = LinearProgram(m + 1, [0] * m + [1], lower=[0] * m + [None])
        for row, b in zip(table, base):
            lp.add(row + [-1], GE, b)
        lp.add([1] * m + [0], EQ, 1)
    else:
        # max sum_o (p.u(o) - u(sigma, o))  s.t.  p.u(o) >= u(sigma, o),  sum p = 1
        lp = LinearProgram(m, [sum(col) for col in zip(*table)])
        for row, b in zip(table, base):
            lp.add(row, GE, b)
        lp.add([1] * m, EQ, 1)
    out = solve(lp, backend)
    assert out.optimal, "dominance LP is feasible and bounded by construction"
    slack = out.x[-1] if mode == STRONG else out.value - sum(base)
    if slack <= 0:
        return None
    p = _drop_self({s: w for s, w in zip(strats, out.x[:m])}, sigma)
    mix = MixedStrategy(i, p)
    witness = None
    if mode == WEAK:
        witness = next(o for o, b in zip(opps, base) if mix.payoff(game, o) > b)
    return DominanceCertificate(i, sigma, mix, tuple(opps), mode, witness)


def find_dominator(game: NormalFormGame, i: int, sigma: str,
                   restriction: StrategyRestriction | None = None,
                   mode: str = WEAK, klass: str = MIXED,
                   backend: str | None = None) -> Optional[DominanceCertificate]:
    """A certificate that ``sigma`` is dominated w.r.t. the restriction, or None.

    Dominators range over all of player ``i``'s strategies (pure class) or
    their mixtures (mixed class); only the opponents are restricted.
    """
    game.index_of(i, sigma)
    if mode not in (STRONG, WEAK) or klass not in (PURE, MIXED):
        raise ValueError(f"bad mode/class {mode!r}/{klass!r}")
    opps = _opponents(game, i, restriction)
    if len(game.strategies[i]) == 1:
        return None
    if klass == PURE:
        cert = _pure_dominator(game, i, sigma, opps, mode)
    else:
        cert = _mixed_dominator(game, i, sigma, opps, mode, backend)
    assert cert is None or cert.replay(game), f"certificate failed replay: {cert}"
    return cert


def find_justifying_belief(game: NormalFormGame, i: int, sigma: str,
                           restriction: StrategyRestriction | None = None,
                           support: str = FULL,
                           backend: str | None = None) -> Optional[BeliefCertificate]:
    """A belief over the restricted opponent profiles to which ``sigma`` is a best response.

    With ``support="full"`` the belief must put positive weight on every
    restricted profile; this maximizes the smallest weight and succeeds iff
    that optimum is positive.
    """
    game.index_of(i, sigma)
    if support not in (SUBSET, FULL):
        raise ValueError(f"bad support mode {support!r}")
    opps = _opponents(game, i, restriction)
    k = len(opps)
    extra = 1 if support == FULL else 0
    lp = LinearProgram(k + extra, [0] * k + [1] * extra)
    for alt in game.strategies[i]:
        if alt != sigma:
            lp.add(_gain_vector(game, i, sigma, alt, opps) + [0] * extra, GE, 0)
    lp.add([1] * k + [0] * extra, EQ, 1)
    if support == FULL:
        for t in range(k):
            row = [0] * (k + 1)
            row[t], row[k] = 1, -1
            lp.add(row, GE, 0)
    out = solve(lp, backend)
    if not out.optimal or (support == FULL and out.x[-1] <= 0):
        return None
    belief = Belief(i, {o: w for o, w in zip(opps, out.x[:k]) if w})
    cert = BeliefCertificate(sigma, belief, support, tuple(opps))
    assert cert.replay(game), f"belief certificate failed replay: {cert}"
    return cert


def format_belief(cert: BeliefCertificate) -> str:
    parts = [f"{','.join(o)}: {format_rational(w)}" for o, w in sorted(cert.belief.weights.items())]
    return "{" + "; ".join(parts) + "}"
