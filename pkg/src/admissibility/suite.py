"""The small named games used throughout the tests and the CLI."""
from .game import NormalFormGame


def prisoners_dilemma() -> NormalFormGame:
    return NormalFormGame.bimatrix(["C", "D"], ["C", "D"],
                                   [[3, 0], [4, 1]],
                                   [[3, 4], [0, 1]])


def g1() -> NormalFormGame:
    """B is weakly but not strongly dominated by T; player 2 is indifferent."""
    return NormalFormGame.bimatrix(["T", "B"], ["L", "R"],
                                   [[1, 1], [1, 0]],
                                   [[0, 0], [0, 0]])


def g2() -> NormalFormGame:
    """Weak elimination removes B, then R: X1 = ({T},{L,R}), X2 = ({T},{L})."""
    return NormalFormGame.bimatrix(["T", "B"], ["L", "R"],
                                   [[1, 1], [1, 0]],
                                   [[1, 0], [0, 1]])


def matching_pennies() -> NormalFormGame:
    return NormalFormGame.bimatrix(["H", "T"], ["H", "T"],
                                   [[1, -1], [-1, 1]],
                                   [[-1, 1], [1, -1]])


def zero_game(m: int = 2, n: int = 2) -> NormalFormGame:
    rows = [f"r{k}" for k in range(m)]
    cols = [f"c{k}" for k in range(n)]
    zeros = [[0] * n for _ in range(m)]
    return NormalFormGame.bimatrix(rows, cols, zeros, zeros)


def single_strategy_game() -> NormalFormGame:
    return NormalFormGame.bimatrix(["a"], ["b"], [[0]], [[0]])


FIXED_SUITE = {
    "pd": prisoners_dilemma,
    "g1": g1,
    "g2": g2,
    "matching_pennies": matching_pennies,
}
