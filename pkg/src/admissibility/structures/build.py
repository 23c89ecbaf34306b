"""Witness structures and the combinators that paste them together."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from ..dominance import FULL, MIXED, WEAK, find_justifying_belief
from ..elimination import EliminationTrace, eliminate, survives, verify_rat1_witness
from ..game import NormalFormGame, StrategyRestriction, drop, insert
from .model import ProbabilityStructure, StructureError

log = logging.getLogger(__name__)


def profile_id(profile) -> str:
    return "(" + ",".join(profile) + ")"


def level_id(level: int, i: int, profile) -> str:
    """State id ``(k,i,(s1,...,sn))`` with a 1-based player tag."""
    return f"({level},{i + 1},{profile_id(profile)})"


def build_rationalizability_structure(game: NormalFormGame, sets, beliefs) -> ProbabilityStructure:
    """States are the profiles of ``sets``; player i at a state believes his
    own justifying belief, lifted to states where he keeps his strategy."""
    if isinstance(sets, StrategyRestriction):
        sets = sets.sets
    if not verify_rat1_witness(game, sets, beliefs):
        raise StructureError("sets and beliefs do not form a rationalizability witness")
    profiles = list(itertools.product(*sets))
    ids = [profile_id(p) for p in profiles]
    pos = {p: k for k, p in enumerate(profiles)}
    bel = []
    for i in range(game.n):
        per_state = []
        for prof in profiles:
            mu = beliefs[(i, prof[i])]
            mu = getattr(mu, "belief", mu)
            per_state.append({pos[insert(opp, i, prof[i])]: w for opp, w in mu.weights.items()})
        bel.append(tuple(per_state))
    return ProbabilityStructure(game, tuple(ids), tuple(profiles), tuple(bel))


@dataclass
class MbarResult:
    structure: ProbabilityStructure
    k: int
    trace: EliminationTrace
    index: dict = field(default_factory=dict)  # (level, tag, profile) -> state id
    reroutes: list = field(default_factory=list)  # (state id, player, target id) moved down a level

    def state(self, level: int, i: int, profile) -> str:
        return self.index[(level, i, tuple(profile))]


def build_Mbar(game: NormalFormGame, k: int, verify: bool = True) -> MbarResult:
    """The finite structure whose level-k' states satisfy D^{k'} for every
    player other than the state's tag.

    Player j at ``(k', i, s)`` holds a full-support belief on X^{k'-1}_{-j}
    justifying ``s_j``, transported to states tagged j that keep ``s_j``: level
    k'-1 when ``i != j`` and level k' when ``i == j``. When the level-k' target
    does not exist, its mass goes to the level-(k'-1) state instead. Level 0
    uses the uniform belief over all opponent profiles.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    trace = eliminate(game, WEAK, MIXED)
    index, order = {}, []
    for level in range(k + 1):
        xs = trace.at(level)
        for i in range(game.n):
            for prof in xs.profiles():
                key = (level, i, prof)
                index[key] = level_id(level, i, prof)
                order.append(key)
    pos = {key: w for w, key in enumerate(order)}

    justifying = {}

    def mu(level, j, s):
        if (level, j, s) not in justifying:
            if level == 0:
                opps = game.opponent_profiles(j)
                justifying[(level, j, s)] = {o: Fraction(1, len(opps)) for o in opps}
            else:
                cert = find_justifying_belief(game, j, s, trace.at(level - 1), FULL)
                if cert is None:
                    raise AssertionError(f"survivor {s} of player {j + 1} has no full-support belief")
                justifying[(level, j, s)] = cert.belief.weights
        return justifying[(level, j, s)]

    reroutes = []
    beliefs = [[None] * len(order) for _ in range(game.n)]
    for w, (level, i, prof) in enumerate(order):
        for j in range(game.n):
            dist = {}
            for opp, p in mu(level, j, prof[j]).items():
                tau = insert(opp, j, prof[j])
                if level == 0:
                    target = (0, j, tau)
                elif i != j:
                    target = (level - 1, j, tau)
                else:
                    target = (level, j, tau)
                    if target not in pos:
                        target = (level - 1, j, tau)
                        reroutes.append((index[(level, i, prof)], j, index[target]))
                t = pos[target]
                dist[t] = dist.get(t, 0) + p
            beliefs[j][w] = dist
    for sid, j, target in reroutes:
        log.debug("M-bar: player %d at %s rerouted to %s", j + 1, sid, target)

    structure = ProbabilityStructure(game, tuple(index[key] for key in order),
                                     tuple(key[2] for key in order),
                                     tuple(tuple(b) for b in beliefs))
    result = MbarResult(structure, k, trace, index, reroutes)
    if verify:
        bad = mbar_violations(result)
        if bad:
            raise StructureError(f"M-bar postcondition fails at {bad[:3]}")
    return result


def mbar_violations(result: MbarResult, checker=None) -> list[tuple[str, int]]:
    """States ``(k', i, s)`` and players ``j != i`` where D^{k'}_j fails."""
    from ..logic.checker import ModelChecker
    from ..logic.formula import mk_D

    game = result.structure.game
    checker = checker or ModelChecker(result.structure)
    bad = []
    for (level, i, prof), sid in result.index.items():
        for j in range(game.n):
            if j != i and not checker.holds(sid, mk_D(game, level, j)):
                bad.append((sid, j))
    return bad


@dataclass
class MinftyResult:
    structure: ProbabilityStructure
    state: str
    targets: list[str]
    mbar: MbarResult


def build_Minfty(game: NormalFormGame, i: int, sigma: str, K: int, verify: bool = True) -> MinftyResult:
    """M-bar^K plus a fresh state where player ``i`` plays ``sigma`` and gives
    positive probability to a D^k_i state for every k <= K."""
    from ..logic.checker import ModelChecker
    from ..logic.formula import ConsidersPossible, mk_D

    if not survives(game, i, sigma, K, WEAK, MIXED):
        raise StructureError(f"strategy {sigma!r} of player {i + 1} does not survive {K} rounds")
    mbar = build_Mbar(game, K, verify=False)
    other = next(j for j in range(game.n) if j != i)
    targets = []
    for level in range(K + 1):
        xs = mbar.trace.at(level)
        opp = next(itertools.product(*drop(xs.sets, i)))
        targets.append(mbar.state(level, other, insert(opp, i, sigma)))
    base = mbar.structure
    omega = _fresh_id(base, "omega")
    anchor = base.index(targets[-1])
    pos = {sid: w for w, sid in enumerate(base.states)}
    beliefs = []
    for j in range(game.n):
        if j == i:
            new = {pos[t]: Fraction(1, len(targets)) for t in targets}
        else:
            new = dict(base.beliefs[j][anchor])
        beliefs.append(base.beliefs[j] + (new,))
    structure = ProbabilityStructure(game, base.states + (omega,),
                                     base.profiles + (base.profiles[anchor],), tuple(beliefs))
    if verify:
        checker = ModelChecker(structure)
        for level in range(K + 1):
            if not checker.holds(omega, ConsidersPossible(i, mk_D(game, level, i))):
                raise StructureError(f"<B_{i + 1}> D^{level}_{i + 1} fails at the designated state")
    return MinftyResult(structure, omega, targets, mbar)


def _fresh_id(m: ProbabilityStructure, base: str) -> str:
    sid = base
    while sid in m._pos:
        sid += "'"
    return sid


def add_null_state(m: ProbabilityStructure, sid: str):
    """Copy ``sid`` into a fresh state that no belief reaches.

    Returns ``(structure, new_id)``.
    """
    w = m.index(sid)
    new = _fresh_id(m, sid + "'")
    beliefs = tuple(per_state + (dict(per_state[w]),) for per_state in m.beliefs)
    return ProbabilityStructure(m.game, m.states + (new,), m.profiles + (m.profiles[w],),
                                beliefs), new


def disjoint_union(parts, prefixes=None):
    """Union of structures over one game; ids are prefixed to keep them apart.

    Returns ``(structure, renames)`` with one ``{old id: new id}`` per part.
    """
    parts = list(parts)
    game = parts[0].game
    if any(p.game != game for p in parts):
        raise StructureError("structures are over different games")
    if prefixes is None:
        prefixes = [f"w{k + 1}:" for k in range(len(parts))]
    states, profiles, renames, offsets = [], [], [], []
    for p, pre in zip(parts, prefixes):
        offsets.append(len(states))
        renames.append({sid: pre + sid for sid in p.states})
        states.extend(pre + sid for sid in p.states)
        profiles.extend(p.profiles)
    beliefs = []
    for i in range(game.n):
        per_state = []
        for p, off in zip(parts, offsets):
            for dist in p.beliefs[i]:
                per_state.append({t + off: q for t, q in dist.items()})
        beliefs.append(tuple(per_state))
    return ProbabilityStructure(game, tuple(states), tuple(profiles), tuple(beliefs)), renames


def merge_conjunction(game: NormalFormGame, witnesses):
    """Paste one witness per player so that all designated states agree.

    ``witnesses[i] = (structure, state)`` where the state satisfies some
    formula about player i. In the result, the states ``omega^1..omega^n``
    all carry player i's strategy and belief from witness i, so formulas built
    from ``play_i``, ``RAT_i`` and player-i belief operators transfer.
    Returns ``(structure, [omega^1, ..., omega^n])``.
    """
    witnesses = list(witnesses)
    if len(witnesses) != game.n:
        raise StructureError(f"need {game.n} witnesses, got {len(witnesses)}")
    if any(m.game != game for m, _ in witnesses):
        raise StructureError("witness structures are over different games")
    nulls = [add_null_state(m, sid) for m, sid in witnesses]
    union, renames = disjoint_union([m for m, _ in nulls])
    omegas = [renames[k][sid] for k, (_, sid) in enumerate(nulls)]
    w_of = [union.index(o) for o in omegas]
    profiles = list(union.profiles)
    merged_profile = tuple(profiles[w_of[i]][i] for i in range(game.n))
    for w in w_of:
        profiles[w] = merged_profile
    beliefs = []
    for i in range(game.n):
        per_state = list(union.beliefs[i])
        for w in w_of:
            per_state[w] = dict(union.beliefs[i][w_of[i]])
        beliefs.append(tuple(per_state))
    return ProbabilityStructure(game, union.states, tuple(profiles), tuple(beliefs)), omegas
