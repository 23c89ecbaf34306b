"""Command-line front end: ``admissibility <command> ...``.

Exit status: 0 ok, 1 domain error, 2 input parse error, 3 verification violations.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dominance import FULL, MIXED, PURE, STRONG, SUBSET, WEAK, find_justifying_belief, format_belief
from .elimination import eliminate, rationalizable_sets
from .game import GameError, NormalFormGame, load_game
from .logic.checker import ModelChecker, OracleRejection, make_oracle
from .logic.syntax import FormulaSyntaxError, UnknownIdError, parse, render
from .structures import (StructureError, build_Mbar, build_Minfty,
                         build_rationalizability_structure, load_structure)
from .suite import FIXED_SUITE


class ParseFailure(Exception):
    """Malformed input file or formula (exit status 2)."""


def _load_game(ref: str) -> NormalFormGame:
    path = Path(ref)
    if not path.exists() and ref in FIXED_SUITE:
        return FIXED_SUITE[ref]()
    try:
        return load_game(path)
    except FileNotFoundError:
        raise GameError(f"game file {ref!r} not found (built-ins: {', '.join(FIXED_SUITE)})") from None
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{ref}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except GameError as exc:
        raise ParseFailure(f"{ref}: {exc}") from None


def _formula_text(arg: str) -> str:
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text()
        except OSError as exc:
            raise GameError(f"cannot read formula file {arg[1:]!r}: {exc.strerror}") from None
    return arg


def _player(game: NormalFormGame, i: int) -> int:
    if not 1 <= i <= game.n:
        raise GameError(f"player {i} not found (game has {game.n} players)")
    return i - 1


def _strategy(game: NormalFormGame, i: int, s: str) -> str:
    if not game.has_strategy(i, s):
        raise GameError(f"strategy {s!r} not found for player {i + 1}")
    return s


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _table(header, rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[k]) for r in rows)) if rows else len(str(h))
              for k, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def cmd_eliminate(args, out):
    game = _load_game(args.game)
    depth = None if args.rounds == "fix" else int(args.rounds)
    trace = eliminate(game, args.criterion, getattr(args, "class"), depth)
    if args.format == "json":
        print(_dump(trace.to_json()), file=out)
        return 0
    rows = []
    for k, r in enumerate(trace.rounds):
        rows.append([k] + ["{" + ",".join(s) + "}" for s in r.sets])
    print(_table(["k"] + [f"player {p}" for p in game.players], rows), file=out)
    print(f"converged_at={trace.converged_at}", file=out)
    return 0


def cmd_rationalizable(args, out):
    game = _load_game(args.game)
    rs = rationalizable_sets(game)
    if args.format == "json":
        print(_dump({
            "sets": [list(s) for s in rs.sets],
            "beliefs": [{"player": i + 1, "strategy": s, **cert.to_json()}
                        for (i, s), cert in sorted(rs.beliefs.items())],
        }), file=out)
        return 0
    rows = [[i + 1, s, format_belief(cert)] for (i, s), cert in sorted(rs.beliefs.items())]
    print(_table(["player", "strategy", "belief"], rows), file=out)
    return 0


def cmd_belief(args, out):
    game = _load_game(args.game)
    i = _player(game, args.player)
    s = _strategy(game, i, args.strategy)
    restr = None
    if args.rounds is not None:
        restr = eliminate(game, WEAK if args.support == FULL else STRONG, MIXED).at(args.rounds)
    cert = find_justifying_belief(game, i, s, restr, args.support)
    if cert is None:
        print("none" if args.format == "table" else "null", file=out)
    elif args.format == "json":
        print(_dump(cert.to_json()), file=out)
    else:
        print(format_belief(cert), file=out)
    return 0


def _build_witness(args):
    game = _load_game(args.game)
    if args.kind == "rat":
        rs = rationalizable_sets(game)
        return build_rationalizability_structure(game, rs.sets, rs.belief_map()), None
    if args.k is None:
        raise GameError("--k is required for this witness kind")
    if args.kind == "mbar":
        return build_Mbar(game, args.k).structure, None
    if args.player is None or args.strategy is None:
        raise GameError("minfty needs --player and --strategy")
    i = _player(game, args.player)
    res = build_Minfty(game, i, _strategy(game, i, args.strategy), args.k)
    return res.structure, res.state


def cmd_witness(args, out):
    structure, designated = _build_witness(args)
    data = structure.to_json()
    if designated is not None:
        data["designated"] = designated
    text = _dump(data)
    if args.output:
        Path(args.output).write_text(text + "\n")
        print(f"wrote {len(structure.states)} states to {args.output}", file=out)
    else:
        print(text, file=out)
    return 0


def _load_structure(ref):
    try:
        return load_structure(ref)
    except FileNotFoundError as exc:
        raise GameError(f"structure file not found: {exc.filename}") from None
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{ref}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except StructureError as exc:
        raise ParseFailure(f"{ref}: {exc}") from None


def cmd_check(args, out):
    m = _load_structure(args.structure)
    formula = parse(_formula_text(args.formula), m.game)
    family = [m] + [_load_structure(p) for p in args.family or ()]
    if any(f.game != m.game for f in family):
        raise GameError("family structures are over a different game")
    checker = ModelChecker(m, make_oracle(args.oracle, m.game, family))
    if args.state == "*":
        states = checker.satisfying(formula)
        print(_dump(states) if args.format == "json" else "\n".join(states), file=out)
        return 0
    m.index(args.state)
    value = checker.holds(args.state, formula)
    print("true" if value else "false", file=out)
    return 0


def cmd_verify(args, out):
    from .harness import verify, verify_fixed_suite

    try:
        a, _, b = args.seeds.partition("..")
        seeds = range(int(a), int(b or a) + 1)
    except ValueError:
        raise ParseFailure(f"--seeds expects A..B, got {args.seeds!r}") from None
    report = verify(seeds, args.players, args.max_strategies, args.k_max, args.jobs)
    if args.fixed:
        report = report.merge(verify_fixed_suite())
    data = report.to_json()
    data["seeds"] = [seeds.start, seeds.stop - 1]
    if args.format == "json":
        print(_dump(data), file=out)
    else:
        print(_table(["check", "count"], sorted(data["checks"].items())), file=out)
        for v in data["violations"]:
            print("VIOLATION", json.dumps(v, sort_keys=True), file=out)
        print("ok" if report.ok else f"{len(data['violations'])} violation(s)", file=out)
    return 0 if report.ok else 3


def cmd_parse(args, out):
    game = _load_game(args.game) if args.game else None
    f = parse(_formula_text(args.formula), game)
    if args.format == "json":
        print(_dump({"formula": render(f), "depth": f.depth}), file=out)
    else:
        print(render(f), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="admissibility",
                                description="Iterated admissibility toolkit.")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "table"], default="table")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eliminate", parents=[fmt], help="iterated elimination trace")
    e.add_argument("game", help="game JSON file or a built-in name (pd, g1, g2, matching_pennies)")
    e.add_argument("--criterion", choices=[WEAK, STRONG], default=WEAK)
    e.add_argument("--class", choices=[PURE, MIXED], default=MIXED)
    e.add_argument("--rounds", default="fix", help="K or 'fix'")
    e.set_defaults(func=cmd_eliminate)

    r = sub.add_parser("rationalizable", parents=[fmt], help="rationalizable sets with beliefs")
    r.add_argument("game")
    r.set_defaults(func=cmd_rationalizable)

    b = sub.add_parser("belief", parents=[fmt], help="justifying belief for a strategy")
    b.add_argument("game")
    b.add_argument("--player", type=int, required=True)
    b.add_argument("--strategy", required=True)
    b.add_argument("--support", choices=[FULL, SUBSET], default=FULL)
    b.add_argument("--rounds", type=int, help="restrict opponents to X^K of the matching trace")
    b.set_defaults(func=cmd_belief)

    w = sub.add_parser("witness", parents=[fmt], help="build a witness structure (JSON)")
    w.add_argument("game")
    w.add_argument("--kind", choices=["mbar", "minfty", "rat"], required=True)
    w.add_argument("--k", type=int)
    w.add_argument("--player", type=int)
    w.add_argument("--strategy")
    w.add_argument("-o", "--output")
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("check", parents=[fmt], help="model-check a formula at a state")
    c.add_argument("--structure", required=True)
    c.add_argument("--state", required=True, help="state id, or '*' to list satisfying states")
    c.add_argument("--formula", required=True, help="formula text or @file")
    c.add_argument("--oracle", choices=["theorem", "family", "reject"], default="theorem")
    c.add_argument("--family", nargs="*", help="extra structures for the family oracle")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", help="run the cross-check harness")
    v.add_argument("--format", choices=["json", "table"], default="json")
    v.add_argument("--seeds", default="0..199")
    v.add_argument("--players", type=int, default=2)
    v.add_argument("--max-strategies", type=int, default=4)
    v.add_argument("--k-max", type=int, default=3)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--fixed", action="store_true", help="also run the fixed example suite")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("parse", parents=[fmt], help="echo the normalized formula")
    q.add_argument("formula", help="formula text or @file")
    q.add_argument("--game", help="validate player and strategy ids against this game")
    q.set_defaults(func=cmd_parse)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UnknownIdError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (FormulaSyntaxError, ParseFailure) as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except (GameError, StructureError, OracleRejection, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
