"""Iterated admissibility: exact elimination, justifying beliefs, epistemic model checking."""
from .game import (Belief, GameError, MixedStrategy, NormalFormGame, StrategyRestriction,
                   best_responses, expected_utility, load_game)

__version__ = "0.1.0"

__all__ = ["Belief", "GameError", "MixedStrategy", "NormalFormGame", "StrategyRestriction",
           "best_responses", "expected_utility", "load_game"]
