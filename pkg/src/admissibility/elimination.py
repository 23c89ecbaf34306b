"""Iterated deletion of dominated strategies and rationalizability."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Optional

from .dominance import (MIXED, STRONG, SUBSET, WEAK, BeliefCertificate, DominanceCertificate,
                        find_dominator, find_justifying_belief)
from .game import Belief, GameError, NormalFormGame, StrategyRestriction, best_responses, drop

FIXPOINT = None


@dataclass
class EliminationTrace:
    criterion: str
    klass: str
    rounds: list[StrategyRestriction]
    removals: list[dict[int, list[tuple[str, DominanceCertificate]]]] = field(default_factory=list)
    converged_at: Optional[int] = None

    def at(self, k) -> StrategyRestriction:
        """X^k; ``k`` may be ``math.inf`` or ``None`` once the trace has converged."""
        if k is None or k == math.inf:
            if self.converged_at is None:
                raise ValueError("trace has not reached its fixpoint")
            return self.rounds[self.converged_at]
        if k < 0:
            raise ValueError("round index must be nonnegative")
        if k < len(self.rounds):
            return self.rounds[k]
        if self.converged_at is not None:
            return self.rounds[self.converged_at]
        raise ValueError(f"trace only covers {len(self.rounds) - 1} rounds")

    @property
    def fixpoint(self) -> StrategyRestriction:
        return self.at(None)

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "class": self.klass,
            "rounds": [r.to_json() for r in self.rounds],
            "removals": [
                {str(i + 1): [cert.to_json() for _, cert in rem] for i, rem in sorted(step.items())}
                for step in self.removals
            ],
            "converged_at": self.converged_at,
        }


def _step(game, current, criterion, klass):
    keep, removed = [], {}
    for i in range(game.n):
        survivors = []
        for s in current[i]:
            cert = find_dominator(game, i, s, current, criterion, klass)
            if cert is None:
                survivors.append(s)
            else:
                removed.setdefault(i, []).append((s, cert))
        keep.append(tuple(survivors))
    return StrategyRestriction(tuple(keep)), removed


@functools.lru_cache(maxsize=4096)
def _cached(game, criterion, klass, depth):
    rounds = [game.full_restriction()]
    removals = []
    converged = None
    limit = sum(len(s) for s in game.strategies) if depth is None else depth
    while len(rounds) - 1 < limit:
        nxt, removed = _step(game, rounds[-1], criterion, klass)
        if nxt == rounds[-1]:
            converged = len(rounds) - 1
            break
        rounds.append(nxt)
        removals.append(removed)
    # each unconverged round deletes something and no set empties
    assert depth is not None or converged is not None
    return rounds, removals, converged


def eliminate(game: NormalFormGame, criterion: str = WEAK, klass: str = MIXED,
              depth: Optional[int] = FIXPOINT) -> EliminationTrace:
    """Maximal simultaneous deletion, round by round.

    ``depth`` is a round count or ``None`` for the fixpoint. Each round removes
    every strategy dominated with respect to the previous round's survivors.
    """
    if criterion not in (STRONG, WEAK):
        raise ValueError(f"unknown criterion {criterion!r}")
    if depth is not None and depth < 0:
        raise ValueError("depth must be nonnegative")
    rounds, removals, converged = _cached(game, criterion, klass, depth)
    return EliminationTrace(criterion, klass, list(rounds), list(removals), converged)


def survives(game: NormalFormGame, i: int, s: str, k, criterion: str = WEAK,
             klass: str = MIXED) -> bool:
    """Whether ``s`` is in X^k_i; ``k`` may be ``math.inf``/``None`` for the fixpoint."""
    game.index_of(i, s)
    if k is None or k == math.inf:
        return s in eliminate(game, criterion, klass).fixpoint[i]
    if k == 0:
        return True
    trace = eliminate(game, criterion, klass, FIXPOINT)
    return s in trace.at(k)[i]


@dataclass
class RationalizableSets:
    sets: StrategyRestriction
    beliefs: dict[tuple[int, str], BeliefCertificate]

    def belief_map(self) -> dict[tuple[int, str], Belief]:
        return {key: cert.belief for key, cert in self.beliefs.items()}


def rationalizable_sets(game: NormalFormGame) -> RationalizableSets:
    """Fixpoint of strong (mixed) deletion, each survivor with a justifying belief."""
    fix = eliminate(game, STRONG, MIXED).fixpoint
    beliefs = {}
    for i in range(game.n):
        for s in fix[i]:
            cert = find_justifying_belief(game, i, s, fix, SUBSET)
            assert cert is not None, f"survivor {s} of player {i + 1} has no justifying belief"
            beliefs[(i, s)] = cert
    return RationalizableSets(fix, beliefs)


def verify_rat1_witness(game: NormalFormGame, sets, beliefs) -> bool:
    """Self-justification check: each listed strategy best-responds to its belief,
    and each belief lives on the opponents' listed strategies."""
    if isinstance(sets, StrategyRestriction):
        sets = sets.sets
    if len(sets) != game.n:
        raise GameError("one strategy set per player is required")
    for j, zj in enumerate(sets):
        for s in zj:
            game.index_of(j, s)
            belief = beliefs.get((j, s))
            if belief is None:
                raise GameError(f"missing belief for strategy {s!r} of player {j + 1}")
            if isinstance(belief, BeliefCertificate):
                belief = belief.belief
            if belief.player != j:
                return False
            for opp in belief.support:
                others = drop(range(game.n), j)
                if any(o not in sets[k] for k, o in zip(others, opp)):
                    return False
            if s not in best_responses(game, j, belief):
                return False
    return True
