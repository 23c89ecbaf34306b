"""Level-k strong admissibility, decided through weak elimination.

The formulas F^k_i use an infinitary "all I know" operator and are never
built; a strategy is level-k strongly admissible exactly when it survives k
rounds of iterated weak deletion.
"""
from ..dominance import MIXED, WEAK
from ..elimination import survives


def strongly_admissible_level(game, i: int, sigma: str, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return survives(game, i, sigma, k, WEAK, MIXED)
