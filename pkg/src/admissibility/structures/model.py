"""Finite probability structures over a game.

Every subset of states is an event, so every formula denotes a measurable set.
Beliefs are stored per player and per state as ``{state index: weight}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from ..game import GameError, NormalFormGame, as_rational, format_rational


class StructureError(GameError):
    pass


@dataclass(frozen=True, eq=False)
class ProbabilityStructure:
    game: NormalFormGame
    states: tuple[str, ...]
    profiles: tuple[tuple[str, ...], ...]
    beliefs: tuple[tuple[Mapping[int, Fraction], ...], ...]
    _pos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        game = self.game
        if len(set(self.states)) != len(self.states):
            raise StructureError("duplicate state id")
        if len(self.profiles) != len(self.states):
            raise StructureError("one profile per state is required")
        for sid, prof in zip(self.states, self.profiles):
            if len(prof) != game.n:
                raise StructureError(f"state {sid}: profile {prof} has wrong length")
            for j, s in enumerate(prof):
                if not game.has_strategy(j, s):
                    raise StructureError(f"state {sid}: unknown strategy {s!r} for player {j + 1}")
        if len(self.beliefs) != game.n:
            raise StructureError("one belief map per player is required")
        N = len(self.states)
        cleaned = []
        for i, per_state in enumerate(self.beliefs):
            if len(per_state) != N:
                raise StructureError(f"player {i + 1}: one belief per state is required")
            row = []
            for w, dist in enumerate(per_state):
                d = {}
                for t, p in dist.items():
                    if not (isinstance(t, int) and 0 <= t < N):
                        raise StructureError(f"state {self.states[w]}: belief over unknown state {t!r}")
                    p = as_rational(p)
                    if p < 0:
                        raise StructureError(f"state {self.states[w]}: negative weight")
                    if p:
                        d[t] = d.get(t, 0) + p
                if sum(d.values()) != 1:
                    raise StructureError(
                        f"state {self.states[w]}: player {i + 1} belief sums to {sum(d.values())}")
                row.append(dict(sorted(d.items())))
            cleaned.append(tuple(row))
        object.__setattr__(self, "beliefs", tuple(cleaned))
        object.__setattr__(self, "_pos", {sid: k for k, sid in enumerate(self.states)})
        object.__setattr__(self, "_masks", tuple(
            tuple(sum(1 << t for t in dist) for dist in per_state) for per_state in cleaned))

    @classmethod
    def from_ids(cls, game: NormalFormGame, states: Sequence[str],
                 profiles: Mapping[str, Sequence[str]],
                 beliefs: Sequence[Mapping[str, Mapping[str, object]]]) -> ProbabilityStructure:
        """Build from id-keyed maps: ``beliefs[i][state] = {state: weight}``."""
        states = tuple(states)
        pos = {s: k for k, s in enumerate(states)}

        def idx(sid):
            try:
                return pos[sid]
            except KeyError:
                raise StructureError(f"unknown state {sid!r}") from None

        bel = tuple(
            tuple({idx(t): p for t, p in beliefs[i][s].items()} for s in states)
            for i in range(game.n))
        return cls(game, states, tuple(tuple(profiles[s]) for s in states), bel)

    def __len__(self):
        return len(self.states)

    def index(self, sid: str) -> int:
        try:
            return self._pos[sid]
        except KeyError:
            raise StructureError(f"unknown state {sid!r}") from None

    def profile(self, sid: str) -> tuple[str, ...]:
        return self.profiles[self.index(sid)]

    def belief(self, i: int, sid: str) -> dict[str, Fraction]:
        return {self.states[t]: p for t, p in self.beliefs[i][self.index(sid)].items()}

    def states_playing(self, i: int, s: str) -> list[str]:
        return [sid for sid, prof in zip(self.states, self.profiles) if prof[i] == s]

    @property
    def support_masks(self) -> tuple[tuple[int, ...], ...]:
        """Bitmask of each belief's support, indexed ``[player][state]``."""
        return self._masks

    def to_json(self, game_ref=None) -> dict:
        """``game_ref`` may be a path string to reference instead of inlining the game."""
        return {
            "game": game_ref if game_ref is not None else self.game.to_json(),
            "states": [
                {
                    "id": sid,
                    "profile": list(prof),
                    "beliefs": [
                        {self.states[t]: format_rational(p) for t, p in self.beliefs[i][w].items()}
                        for i in range(self.game.n)
                    ],
                }
                for w, (sid, prof) in enumerate(zip(self.states, self.profiles))
            ],
        }

    @classmethod
    def from_json(cls, data: dict, base_dir=None) -> ProbabilityStructure:
        gdata = data.get("game")
        if isinstance(gdata, str):
            path = Path(gdata)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            with open(path) as fh:
                gdata = json.load(fh)
        if not isinstance(gdata, dict):
            raise StructureError("structure JSON needs a 'game' object or path")
        game = NormalFormGame.from_json(gdata)
        try:
            entries = data["states"]
            states = [e["id"] for e in entries]
            profiles = {e["id"]: e["profile"] for e in entries}
            beliefs = [{e["id"]: e["beliefs"][i] for e in entries} for i in range(game.n)]
        except (KeyError, TypeError, IndexError) as exc:
            raise StructureError(f"malformed structure JSON ({exc})") from None
        return cls.from_ids(game, states, profiles, beliefs)


def load_structure(path) -> ProbabilityStructure:
    path = Path(path)
    with open(path) as fh:
        return ProbabilityStructure.from_json(json.load(fh), base_dir=path.parent)
