"""Formula AST for the epistemic language over a game.

Players are 0-based here; the concrete syntax prints them 1-based. Nodes are
immutable, hash in O(1) (hashes are computed bottom-up at construction), and
compare structurally, so formulas built independently or parsed from text
share memo-table entries.
"""
from __future__ import annotations

import functools
from fractions import Fraction

from ..game import NormalFormGame, drop


class Formula:
    __slots__ = ("_hash", "depth")
    _fields: tuple = ()

    def __init__(self, *values):
        for name, v in zip(self._fields, values):
            object.__setattr__(self, name, v)
        children = self.children()
        object.__setattr__(self, "_hash", hash((type(self).__name__, *values)))
        object.__setattr__(self, "depth", max((c.depth for c in children), default=0)
                           + (1 if self.modal else 0))

    modal = False

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def values(self) -> tuple:
        return tuple(getattr(self, f) for f in self._fields)

    def children(self) -> tuple:
        return tuple(v for v in self.values() if isinstance(v, Formula))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self.values() == other.values()

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self.values()))})"

    def __and__(self, other):
        return And(self, other)

    def __invert__(self):
        return Not(self)

    def __reduce__(self):
        return (type(self), self.values())


class Top(Formula):
    __slots__ = ()


class Rat(Formula):
    __slots__ = ("player",)
    _fields = ("player",)


class Play(Formula):
    __slots__ = ("player", "strategy")
    _fields = ("player", "strategy")


class Not(Formula):
    __slots__ = ("body",)
    _fields = ("body",)


class And(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")


class Believes(Formula):
    """Probability one (B_i)."""
    __slots__ = ("player", "body")
    _fields = ("player", "body")
    modal = True


class ConsidersPossible(Formula):
    """Positive probability (<B_i>)."""
    __slots__ = ("player", "body")
    _fields = ("player", "body")
    modal = True


class Diamond(Formula):
    """Satisfiable in some structure appropriate for the game."""
    __slots__ = ("body",)
    _fields = ("body",)
    modal = True


class ProbAtLeast(Formula):
    __slots__ = ("player", "body", "alpha")
    _fields = ("player", "body", "alpha")
    modal = True


class ProbGreater(Formula):
    __slots__ = ("player", "body", "alpha")
    _fields = ("player", "body", "alpha")
    modal = True


TRUE = Top()


def _check_alpha(alpha) -> Fraction:
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"probability bound {alpha} outside [0, 1]")
    return alpha


def prob_at_least(i: int, body: Formula, alpha) -> ProbAtLeast:
    return ProbAtLeast(i, body, _check_alpha(alpha))


def prob_greater(i: int, body: Formula, alpha) -> ProbGreater:
    return ProbGreater(i, body, _check_alpha(alpha))


def implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def conj(items) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``true``."""
    items = list(items)
    if not items:
        return TRUE
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


def conjuncts(f: Formula) -> list[Formula]:
    """Flatten a left-folded conjunction."""
    out = []
    while isinstance(f, And):
        out.append(f.right)
        f = f.left
    out.append(f)
    return out[::-1]


def rat_all(n: int) -> Formula:
    return conj(Rat(i) for i in range(n))


def everyone_believes(n: int, body: Formula) -> Formula:
    return conj(Believes(i, body) for i in range(n))


def play_profile(profile) -> Formula:
    return conj(Play(i, s) for i, s in enumerate(profile))


def play_others(i: int, opp) -> Formula:
    """play_{-i}(opp) for an opponent profile ordered by player."""
    others = drop(range(len(opp) + 1), i)
    return conj(Play(j, s) for j, s in zip(others, opp))


@functools.lru_cache(maxsize=None)
def mk_E(k: int, body: Formula, n: int) -> Formula:
    """E^k body, with E^0 body = body."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = body
    for _ in range(k):
        out = everyone_believes(n, out)
    return out


@functools.lru_cache(maxsize=None)
def mk_C(k: int, j: int, n: int) -> Formula:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return TRUE
    others = conj(mk_C(k - 1, jj, n) for jj in range(n) if jj != j)
    return And(Rat(j), Believes(j, others))


def mk_Ominus(game: NormalFormGame, i: int, body: Formula) -> Formula:
    """B_i body plus positive probability on every opponent profile consistent with body."""
    parts = [Believes(i, body)]
    for opp in game.opponent_profiles(i):
        p = play_others(i, opp)
        parts.append(implies(Diamond(And(p, body)), ConsidersPossible(i, p)))
    return conj(parts)


@functools.lru_cache(maxsize=None)
def mk_D_others(game: NormalFormGame, k: int, j: int) -> Formula:
    """Conjunction of D^k over every player except ``j``."""
    return conj(mk_D(game, k, jj) for jj in range(game.n) if jj != j)


@functools.lru_cache(maxsize=None)
def mk_D(game: NormalFormGame, k: int, j: int) -> Formula:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return TRUE
    return And(Rat(j), mk_Ominus(game, j, mk_D_others(game, k - 1, j)))
