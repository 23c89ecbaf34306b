"""Checks that a structure is appropriate for its game.

Conditions (1) and (3) ask that certain sets be events; with every subset an
event they hold by construction. Condition (2) says a player's belief is
concentrated on states where he plays his actual strategy; condition (4) that
it is concentrated on states where he holds the same belief.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import ProbabilityStructure


@dataclass(frozen=True)
class ConditionResult:
    condition: int
    state: str
    player: int
    passed: bool
    event: tuple[str, ...] = ()  # offending states on failure


@dataclass
class AppropriatenessReport:
    strict_condition_4: bool
    results: list[ConditionResult] = field(default_factory=list)

    def failures(self, condition: int | None = None) -> list[ConditionResult]:
        return [r for r in self.results
                if not r.passed and (condition is None or r.condition == condition)]

    @property
    def warnings(self) -> list[ConditionResult]:
        return [] if self.strict_condition_4 else self.failures(4)

    @property
    def ok(self) -> bool:
        required = (1, 2, 3, 4) if self.strict_condition_4 else (1, 2, 3)
        return not any(r.condition in required for r in self.failures())

    def passes(self, condition: int) -> bool:
        return not self.failures(condition)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "strict_condition_4": self.strict_condition_4,
            "failures": [
                {"condition": r.condition, "state": r.state, "player": r.player + 1,
                 "event": list(r.event)}
                for r in self.failures() if r.condition != 4 or self.strict_condition_4
            ],
            "warnings": [
                {"condition": 4, "state": r.state, "player": r.player + 1, "event": list(r.event)}
                for r in self.warnings
            ],
        }


def check_appropriate(m: ProbabilityStructure, strict_condition_4: bool = False) -> AppropriatenessReport:
    report = AppropriatenessReport(strict_condition_4)
    for w, sid in enumerate(m.states):
        for i in range(m.game.n):
            dist = m.beliefs[i][w]
            report.results.append(ConditionResult(1, sid, i, True))
            own = m.profiles[w][i]
            off = tuple(m.states[t] for t in dist if m.profiles[t][i] != own)
            report.results.append(ConditionResult(2, sid, i, not off, off))
            report.results.append(ConditionResult(3, sid, i, True))
            off = tuple(m.states[t] for t in dist if m.beliefs[i][t] != dist)
            report.results.append(ConditionResult(4, sid, i, not off, off))
    return report
