"""Finite normal-form games with exact rational payoffs.

Profiles are tuples of strategy ids ordered by player. An *opponent profile*
for player ``i`` is the same tuple with coordinate ``i`` removed.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class GameError(ValueError):
    """Raised for ill-formed games or references to unknown ids."""


def as_rational(value) -> Fraction:
    """Exact conversion of an int, Fraction or ``"p/q"`` string."""
    if isinstance(value, bool):
        raise GameError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise GameError(f"not a rational: {value!r}") from None
    raise GameError(f"not an exact rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def drop(profile: Sequence, i: int) -> tuple:
    return tuple(profile[:i]) + tuple(profile[i + 1:])


def insert(opp: Sequence, i: int, s) -> tuple:
    return tuple(opp[:i]) + (s,) + tuple(opp[i:])


@dataclass(frozen=True, eq=False)
class NormalFormGame:
    players: tuple[str, ...]
    strategies: tuple[tuple[str, ...], ...]
    payoffs: Mapping[tuple[str, ...], tuple[Fraction, ...]] = field(repr=False)

    def __post_init__(self):
        n = len(self.players)
        if n < 2:
            raise GameError("a game needs at least two players")
        if len(self.strategies) != n:
            raise GameError("one strategy list per player is required")
        for i, strats in enumerate(self.strategies):
            if not strats:
                raise GameError(f"player {i + 1} has no strategies")
            if len(set(strats)) != len(strats):
                raise GameError(f"duplicate strategy id for player {i + 1}")
        for prof in self.profiles():
            vec = self.payoffs.get(prof)
            if vec is None:
                raise GameError(f"missing payoff for profile {prof}")
            if len(vec) != n:
                raise GameError(f"payoff vector for {prof} has length {len(vec)}, expected {n}")
        object.__setattr__(self, "_index", tuple(
            {s: k for k, s in enumerate(strats)} for strats in self.strategies))
        object.__setattr__(self, "_key", (self.players, self.strategies,
                                          tuple(self.payoffs[p] for p in self.profiles())))

    def __eq__(self, other):
        return isinstance(other, NormalFormGame) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @classmethod
    def from_arrays(cls, strategies: Sequence[Sequence[str]], payoffs,
                    players: Sequence[str] | None = None) -> NormalFormGame:
        """Build from a nested array indexed by strategy positions.

        The innermost entries are length-n payoff vectors of rationals.
        """
        strategies = tuple(tuple(str(s) for s in strats) for strats in strategies)
        if players is None:
            players = [str(k + 1) for k in range(len(strategies))]
        table = {}
        for idx in itertools.product(*(range(len(s)) for s in strategies)):
            node = payoffs
            try:
                for k in idx:
                    node = node[k]
            except (IndexError, TypeError, KeyError):
                raise GameError(f"payoff array has no entry at index {list(idx)}") from None
            if isinstance(node, (str, int, Fraction)):
                raise GameError(f"payoff entry at {list(idx)} is not a vector")
            prof = tuple(strategies[j][k] for j, k in enumerate(idx))
            table[prof] = tuple(as_rational(v) for v in node)
        return cls(tuple(players), strategies, table)

    @classmethod
    def bimatrix(cls, rows, cols, u1, u2) -> NormalFormGame:
        """Two-player game from row/column ids and two payoff matrices."""
        arr = [[[u1[r][c], u2[r][c]] for c in range(len(cols))] for r in range(len(rows))]
        return cls.from_arrays([rows, cols], arr)

    @property
    def n(self) -> int:
        return len(self.players)

    def profiles(self) -> Iterable[tuple[str, ...]]:
        return itertools.product(*self.strategies)

    def index_of(self, i: int, s: str) -> int:
        self._check_player(i)
        try:
            return self._index[i][s]
        except KeyError:
            raise GameError(f"unknown strategy {s!r} for player {i + 1}") from None

    def has_strategy(self, i: int, s: str) -> bool:
        return 0 <= i < self.n and s in self._index[i]

    def _check_player(self, i: int):
        if not (isinstance(i, int) and 0 <= i < self.n):
            raise GameError(f"unknown player index {i}")

    def payoff(self, i: int, profile: Sequence[str]) -> Fraction:
        try:
            return self.payoffs[tuple(profile)][i]
        except KeyError:
            for j, s in enumerate(profile):
                self.index_of(j, s)
            raise GameError(f"malformed profile {tuple(profile)}") from None

    def opponent_profiles(self, i: int, restriction=None) -> list[tuple[str, ...]]:
        """Pure profiles of everyone but ``i``, optionally within a restriction."""
        self._check_player(i)
        sets = self.strategies if restriction is None else restriction.sets
        return list(itertools.product(*drop(sets, i)))

    def full_restriction(self) -> StrategyRestriction:
        return StrategyRestriction(self.strategies)

    def to_json(self) -> dict:
        def nest(prefix):
            j = len(prefix)
            if j == self.n:
                return [format_rational(v) for v in self.payoffs[prefix]]
            return [nest(prefix + (s,)) for s in self.strategies[j]]

        return {
            "players": list(self.players),
            "strategies": [list(s) for s in self.strategies],
            "payoffs": nest(()),
        }

    @classmethod
    def from_json(cls, data: dict) -> NormalFormGame:
        try:
            strategies = data["strategies"]
            payoffs = data["payoffs"]
        except (KeyError, TypeError):
            raise GameError("game JSON needs 'strategies' and 'payoffs'") from None
        players = data.get("players")
        if players is not None and len(players) != len(strategies):
            raise GameError("'players' and 'strategies' differ in length")
        return cls.from_arrays(strategies, payoffs, players)


def load_game(path) -> NormalFormGame:
    with open(Path(path)) as fh:
        return NormalFormGame.from_json(json.load(fh))


@dataclass(frozen=True)
class StrategyRestriction:
    """Per-player subsets of strategies, kept in declaration order."""

    sets: tuple[tuple[str, ...], ...]

    @classmethod
    def of(cls, game: NormalFormGame, subsets: Sequence[Iterable[str]]) -> StrategyRestriction:
        if len(subsets) != game.n:
            raise GameError("restriction needs one subset per player")
        out = []
        for i, sub in enumerate(subsets):
            sub = set(sub)
            for s in sub:
                game.index_of(i, s)
            out.append(tuple(s for s in game.strategies[i] if s in sub))
        return cls(tuple(out))

    def __getitem__(self, i: int) -> tuple[str, ...]:
        return self.sets[i]

    def __len__(self):
        return len(self.sets)

    def opponents(self, i: int) -> list[tuple[str, ...]]:
        return list(itertools.product(*drop(self.sets, i)))

    def profiles(self):
        return itertools.product(*self.sets)

    def issubset(self, other: StrategyRestriction) -> bool:
        return all(set(a) <= set(b) for a, b in zip(self.sets, other.sets))

    def to_json(self) -> list[list[str]]:
        return [list(s) for s in self.sets]


@dataclass(frozen=True)
class Belief:
    """Player ``player``'s probability over opponent pure profiles."""

    player: int
    weights: Mapping[tuple[str, ...], Fraction]

    def __post_init__(self):
        ws = {tuple(k): as_rational(v) for k, v in dict(self.weights).items()}
        if not ws:
            raise GameError("a belief needs a nonempty support")
        if any(w <= 0 for w in ws.values()):
            raise GameError("belief weights must be strictly positive")
        if sum(ws.values()) != 1:
            raise GameError(f"belief weights sum to {sum(ws.values())}, not 1")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def point(cls, player: int, opp: Sequence[str]) -> Belief:
        return cls(player, {tuple(opp): Fraction(1)})

    @classmethod
    def uniform(cls, player: int, opps: Sequence[Sequence[str]]) -> Belief:
        opps = list(dict.fromkeys(tuple(o) for o in opps))
        return cls(player, {o: Fraction(1, len(opps)) for o in opps})

    @property
    def support(self) -> frozenset:
        return frozenset(self.weights)

    def mix(self, other: Belief, lam) -> Belief:
        """``lam * self + (1 - lam) * other``."""
        lam = as_rational(lam)
        out: dict = {}
        for k, w in self.weights.items():
            out[k] = out.get(k, 0) + lam * w
        for k, w in other.weights.items():
            out[k] = out.get(k, 0) + (1 - lam) * w
        return Belief(self.player, {k: w for k, w in out.items() if w})

    def validate(self, game: NormalFormGame):
        game._check_player(self.player)
        for opp in self.weights:
            if len(opp) != game.n - 1:
                raise GameError(f"belief profile {opp} is not over the opponents of player {self.player + 1}")
            for j, s in zip((j for j in range(game.n) if j != self.player), opp):
                game.index_of(j, s)

    def to_json(self) -> dict:
        return {"player": self.player + 1,
                "weights": [[list(k), format_rational(w)] for k, w in sorted(self.weights.items())]}


@dataclass(frozen=True)
class MixedStrategy:
    player: int
    weights: Mapping[str, Fraction]

    def __post_init__(self):
        ws = {k: as_rational(v) for k, v in dict(self.weights).items() if as_rational(v) != 0}
        if any(w < 0 for w in ws.values()):
            raise GameError("mixed strategy weights must be nonnegative")
        if sum(ws.values()) != 1:
            raise GameError("mixed strategy weights must sum to 1")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def pure(cls, player: int, s: str) -> MixedStrategy:
        return cls(player, {s: Fraction(1)})

    def payoff(self, game: NormalFormGame, opp: Sequence[str]) -> Fraction:
        return sum((w * game.payoff(self.player, insert(opp, self.player, s))
                    for s, w in self.weights.items()), Fraction(0))

    def to_json(self) -> dict:
        return {s: format_rational(w) for s, w in self.weights.items()}


def expected_utility(game: NormalFormGame, i: int, s: str, belief: Belief) -> Fraction:
    game.index_of(i, s)
    if belief.player != i:
        raise GameError(f"belief belongs to player {belief.player + 1}, not {i + 1}")
    belief.validate(game)
    return sum((w * game.payoff(i, insert(opp, i, s)) for opp, w in belief.weights.items()),
               Fraction(0))


def best_responses(game: NormalFormGame, i: int, belief: Belief) -> set[str]:
    eu = {s: expected_utility(game, i, s, belief) for s in game.strategies[i]}
    top = max(eu.values())
    return {s for s, v in eu.items() if v == top}
