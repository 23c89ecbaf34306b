"""Concrete syntax for formulas.

    true  RAT_<i>  play_<i>(<id>)  !f  f & g  f -> g  B_<i> f  <B_<i>> f  <> f
    pr_<i>(f) >= p/q   pr_<i>(f) > p/q

Unary operators bind tightest, ``&`` associates to the left and ``->`` (lowest,
right-associative) is sugar for ``!(f & !g)``. Player numbers are 1-based.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..game import NormalFormGame, format_rational
from .formula import (TRUE, And, Believes, ConsidersPossible, Diamond, Formula, Not, Play,
                      ProbAtLeast, ProbGreater, Rat, Top)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


class UnknownIdError(FormulaSyntaxError):
    """Well-formed text naming a player or strategy the game lacks."""


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<ge>>=)
  | (?P<gt>>)
  | (?P<bpos><B_(?P<bpos_i>\d+)>)
  | (?P<diamond><>)
  | (?P<not>!)
  | (?P<and>&)
  | (?P<lp>\()
  | (?P<rp>\))
  | (?P<rat>RAT_(?P<rat_i>\d+)\b)
  | (?P<play>play_(?P<play_i>\d+)\s*\(\s*(?P<play_s>[^()\s]+)\s*\))
  | (?P<pr>pr_(?P<pr_i>\d+)\s*\()
  | (?P<bel>B_(?P<bel_i>\d+)\b)
  | (?P<true>true\b)
  | (?P<num>-?\d+(?:/\d+)?)
""", re.VERBOSE)

_ID_OK = re.compile(r"[^()\s]+")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        # lastgroup reports the innermost named group; map back to the token kind
        for name in ("ws", "arrow", "ge", "gt", "bpos", "diamond", "not", "and", "lp", "rp",
                     "rat", "play", "pr", "bel", "true", "num"):
            if m.group(name) is not None:
                kind = name
                break
        if kind != "ws":
            out.append((kind, m, pos))
        pos = m.end()
    out.append(("eof", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, game: NormalFormGame | None):
        self.text = text
        self.game = game
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None):
        tok = self.tokens[self.k]
        if kind is not None and tok[0] != kind:
            raise self.error(f"expected {kind}, found {tok[0]}", tok[2])
        self.k += 1
        return tok

    def error(self, message, pos):
        return FormulaSyntaxError(message, pos, self.text)

    def player(self, digits: str, pos: int) -> int:
        i = int(digits) - 1
        if i < 0 or (self.game is not None and i >= self.game.n):
            raise UnknownIdError(f"unknown player {digits}", pos, self.text)
        return i

    def parse(self) -> Formula:
        f = self.implication()
        tok = self.peek()
        if tok[0] != "eof":
            raise self.error(f"unexpected {tok[0]}", tok[2])
        return f

    def implication(self) -> Formula:
        left = self.conjunction()
        if self.peek()[0] == "arrow":
            self.take()
            right = self.implication()
            return Not(And(left, Not(right)))
        return left

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.peek()[0] == "and":
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        kind, m, pos = self.peek()
        if kind == "not":
            self.take()
            return Not(self.unary())
        if kind == "bel":
            self.take()
            return Believes(self.player(m.group("bel_i"), pos), self.unary())
        if kind == "bpos":
            self.take()
            return ConsidersPossible(self.player(m.group("bpos_i"), pos), self.unary())
        if kind == "diamond":
            self.take()
            return Diamond(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, m, pos = self.take()
        if kind == "true":
            return TRUE
        if kind == "rat":
            return Rat(self.player(m.group("rat_i"), pos))
        if kind == "play":
            i = self.player(m.group("play_i"), pos)
            s = m.group("play_s")
            if self.game is not None and not self.game.has_strategy(i, s):
                raise UnknownIdError(f"unknown strategy {s!r} for player {i + 1}", m.start("play_s"),
                                     self.text)
            return Play(i, s)
        if kind == "pr":
            i = self.player(m.group("pr_i"), pos)
            body = self.implication()
            self.take("rp")
            op, _, oppos = self.take()
            if op not in ("ge", "gt"):
                raise self.error("expected >= or > after pr_i(...)", oppos)
            _, num, npos = self.take("num")
            alpha = Fraction(num.group(0))
            if not 0 <= alpha <= 1:
                raise self.error(f"probability bound {num.group(0)} outside [0, 1]", npos)
            return (ProbAtLeast if op == "ge" else ProbGreater)(i, body, alpha)
        if kind == "lp":
            f = self.implication()
            self.take("rp")
            return f
        raise self.error(f"unexpected {kind}", pos)


def parse(text: str, game: NormalFormGame | None = None) -> Formula:
    """Parse concrete syntax; with a game, player and strategy ids are validated."""
    return _Parser(text, game).parse()


# precedence levels: 0 implication, 1 conjunction, 2 unary/atom
def _render(f: Formula, need: int) -> str:
    if isinstance(f, Not) and isinstance(f.body, And) and isinstance(f.body.right, Not):
        text, level = f"{_render(f.body.left, 1)} -> {_render(f.body.right.body, 0)}", 0
    elif isinstance(f, And):
        text, level = f"{_render(f.left, 1)} & {_render(f.right, 2)}", 1
    elif isinstance(f, Not):
        text, level = f"!{_render(f.body, 2)}", 2
    elif isinstance(f, Believes):
        text, level = f"B_{f.player + 1} {_render(f.body, 2)}", 2
    elif isinstance(f, ConsidersPossible):
        text, level = f"<B_{f.player + 1}> {_render(f.body, 2)}", 2
    elif isinstance(f, Diamond):
        text, level = f"<> {_render(f.body, 2)}", 2
    elif isinstance(f, Top):
        text, level = "true", 2
    elif isinstance(f, Rat):
        text, level = f"RAT_{f.player + 1}", 2
    elif isinstance(f, Play):
        if not _ID_OK.fullmatch(f.strategy):
            raise ValueError(f"strategy id {f.strategy!r} cannot be written in formula syntax")
        text, level = f"play_{f.player + 1}({f.strategy})", 2
    elif isinstance(f, (ProbAtLeast, ProbGreater)):
        op = ">=" if isinstance(f, ProbAtLeast) else ">"
        text, level = f"pr_{f.player + 1}({_render(f.body, 0)}) {op} {format_rational(f.alpha)}", 2
    else:
        raise TypeError(f"not a formula: {f!r}")
    return f"({text})" if level < need else text


def render(f: Formula) -> str:
    return _render(f, 0)
