"""Decision procedures for every game class in the reduction chain.

Parity games are solved with Zielonka's recursive attractor algorithm.
Rabin games are solved two independent ways: by enumerating Steven's
positional strategies (each checked against Audrey's best counter-play with
a component decomposition), and by a product with index appearance records
that turns the Rabin condition into a parity condition.  Muller games use
latest appearance records.  The brute-force procedures double as oracles for
the cleverer ones.
"""

from __future__ import annotations

import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Sequence

from .arena import (
    AUDREY,
    STEVEN,
    Arena,
    GenParityObjective,
    Lasso,
    MullerObjective,
    ParityObjective,
    Player,
    PositionalStrategy,
    RabinObjective,
    all_positional_strategies,
    covering_cycle,
    is_nontrivial,
    play_of,
    reachable,
    restrict,
    shortest_path,
    strongly_connected_components,
)
from .errors import ResourceLimitError, ValidationError
from .reductions import CliqueInstance, genparity_to_rabin

RABIN_BRUTEFORCE_LIMIT = 10**6
IAR_LIMIT = 2 * 10**6
LAR_MAX_COLOURS = 8
CLIQUE_LIMIT = 10**7


@dataclass(frozen=True)
class SolveResult:
    """Winner from the initial vertex plus whatever certificate the method yields.

    ``strategy`` is a positional strategy of the winner; ``counter`` is a lasso
    won by Audrey that is consistent with *every* Steven strategy considered
    (only produced when such a single refutation exists).
    """

    winner: Player
    method: str
    strategy: PositionalStrategy | None = None
    counter: Lasso | None = None
    region: frozenset[int] | None = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def steven_wins(self) -> bool:
        return self.winner is STEVEN


# ---------------------------------------------------------------------------
# explicit parity games and Zielonka's algorithm


class _ParityGame:
    """Flat parity game used by Zielonka; ``steven[v]`` says who owns ``v``."""

    def __init__(self, successors: Sequence[Sequence[int]], steven: Sequence[bool], priority: Sequence[int]):
        self.succ = [list(s) for s in successors]
        self.steven = list(steven)
        self.priority = list(priority)
        self.pred: list[list[int]] = [[] for _ in self.succ]
        for u, ws in enumerate(self.succ):
            for w in ws:
                self.pred[w].append(u)

    def __len__(self):
        return len(self.succ)


def _attractor(game: _ParityGame, alive: set[int], target: set[int], steven: bool):
    """Attractor of ``target`` for one player inside the subgame ``alive``.

    Returns the attractor and the attracting moves of that player.
    """
    attr = set(target) & alive
    moves: dict[int, int] = {}
    remaining: dict[int, int] = {}
    queue = list(attr)
    while queue:
        w = queue.pop()
        for u in game.pred[w]:
            if u not in alive or u in attr:
                continue
            if game.steven[u] == steven:
                attr.add(u)
                moves[u] = w
                queue.append(u)
            else:
                if u not in remaining:
                    remaining[u] = sum(1 for x in game.succ[u] if x in alive)
                remaining[u] -= 1
                if remaining[u] == 0:
                    attr.add(u)
                    queue.append(u)
    return attr, moves


def _zielonka(game: _ParityGame, alive: set[int]):
    """Winning regions and positional strategies of (Steven, Audrey) on ``alive``."""
    if not alive:
        return set(), set(), {}, {}
    top = max(game.priority[v] for v in alive)
    p_steven = top % 2 == 0
    tops = {v for v in alive if game.priority[v] == top}
    attr, attr_moves = _attractor(game, alive, tops, p_steven)
    w_s, w_a, s_s, s_a = _zielonka(game, alive - attr)
    w_me, w_opp = (w_s, w_a) if p_steven else (w_a, w_s)
    s_me, s_opp = (s_s, s_a) if p_steven else (s_a, s_s)
    if not w_opp:
        strat = dict(s_me)
        strat.update(attr_moves)
        for v in tops:
            if game.steven[v] == p_steven:
                strat[v] = next(w for w in game.succ[v] if w in alive)
        region = set(alive)
        return (region, set(), strat, {}) if p_steven else (set(), region, {}, strat)
    battr, battr_moves = _attractor(game, alive, w_opp, not p_steven)
    w2_s, w2_a, s2_s, s2_a = _zielonka(game, alive - battr)
    w2_me, w2_opp = (w2_s, w2_a) if p_steven else (w2_a, w2_s)
    s2_me, s2_opp = (s2_s, s2_a) if p_steven else (s2_a, s2_s)
    opp_region = w2_opp | battr
    opp_strat = dict(s2_opp)
    opp_strat.update(s_opp)
    opp_strat.update(battr_moves)
    if p_steven:
        return w2_me, opp_region, s2_me, opp_strat
    return opp_region, w2_me, opp_strat, s2_me


def zielonka(game: _ParityGame):
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * len(game) + 1000))
    try:
        return _zielonka(game, set(range(len(game))))
    finally:
        sys.setrecursionlimit(limit)


def solve_parity_zielonka(arena: Arena, objective: ParityObjective) -> SolveResult:
    objective.validate(arena.vertex_count)
    game = _ParityGame(arena.successors, [o is STEVEN for o in arena.owner], objective.colours)
    w_s, w_a, s_s, s_a = zielonka(game)
    winner = STEVEN if arena.initial in w_s else AUDREY
    region, strat = (w_s, s_s) if winner is STEVEN else (w_a, s_a)
    mine = {v: strat[v] for v in region if arena.owner[v] is winner}
    return SolveResult(winner, "zielonka", strategy=PositionalStrategy(mine), region=frozenset(w_s))


def solve_by_double_enumeration(arena: Arena, objective) -> Player:
    """Steven wins iff one of his positional strategies beats all of Audrey's.

    Only a valid oracle for objectives positionally determined for both
    players (parity).
    """
    objective.validate(arena.vertex_count)
    audrey_strats = list(all_positional_strategies(arena, AUDREY))
    for sigma in all_positional_strategies(arena, STEVEN):
        if all(objective.steven_wins(play_of(arena, sigma, tau).infinity_set) for tau in audrey_strats):
            return STEVEN
    return AUDREY


# ---------------------------------------------------------------------------
# Audrey's counter-play against a fixed positional strategy


def _bad_component(successors, alive: set[int], start: int, objective: RabinObjective):
    """Strongly connected set reachable from ``start`` that violates every pair.

    Recursive component decomposition: in a strongly connected set S, any
    pair with S meeting G_i but missing B_i can only be defeated by leaving
    out the G_i vertices, so those are deleted and the rest decomposed again.
    Returns ``(component, path)`` where ``path`` leads from ``start`` to the
    component, or ``None``.
    """
    if start not in alive:
        return None
    reach = reachable(successors, start, alive)
    work = [reach]
    while work:
        region = work.pop()
        for comp in strongly_connected_components(successors, region):
            if not is_nontrivial(successors, comp):
                continue
            s = frozenset(comp)
            violated = [g for g, b in objective.pairs if s & g and not s & b]
            if not violated:
                return comp, shortest_path(successors, start, comp[0], reach)
            rest = set(s)
            for g in violated:
                rest -= g
            if rest:
                work.append(rest)
    return None


def _lasso(successors, found) -> Lasso:
    comp, path = found
    return Lasso(tuple(path[:-1]), tuple(covering_cycle(successors, comp)))


def audrey_counter_check(arena: Arena, objective: RabinObjective, strategy: PositionalStrategy) -> Lasso | None:
    """Audrey-winning lasso consistent with ``strategy``, or ``None`` if it wins."""
    objective.validate(arena.vertex_count)
    one_player = restrict(arena, strategy)
    found = _bad_component(one_player.successors, set(range(arena.vertex_count)), arena.initial, objective)
    return None if found is None else _lasso(one_player.successors, found)


class _StrategySearch:
    """Depth-first enumeration of Steven's positional strategies.

    Partial strategies are refuted early: Steven vertices without a choice
    yet are deleted, and a bad cycle reachable in what remains survives in
    every completion.  Refutations carry the set of Steven choices they
    depend on, which lets the search jump back over irrelevant choices
    (conflict-directed backjumping).  Only losing subtrees are skipped, so
    the first strategy found is the lexicographically first winning one.
    """

    def __init__(self, arena: Arena, objective: RabinObjective, limit: int):
        self.arena = arena
        self.objective = objective
        self.limit = limit
        self.nodes = 0
        steven = arena.vertices_of(STEVEN)
        self.choice: dict[int, int] = {v: arena.successors[v][0] for v in steven if len(arena.successors[v]) == 1}
        self.branching = [v for v in steven if len(arena.successors[v]) > 1]
        self.audrey = set(arena.vertices_of(AUDREY))

    def _succ(self):
        arena = self.arena
        return [
            (self.choice[v],) if v in self.choice else arena.successors[v]
            for v in range(arena.vertex_count)
        ]

    def _refutation(self):
        succ = self._succ()
        alive = self.audrey | set(self.choice)
        start = self.arena.initial
        found = _bad_component(succ, alive, start, self.objective)
        if found is None:
            return None
        # shrink to a minimal set of choices that still admits a bad cycle;
        # deepest choices go first so that backjumps reach further up
        support = set(found[0]) | set(found[1])
        for u in sorted((v for v in support if v in self.rank), key=self.rank.__getitem__, reverse=True):
            smaller = _bad_component(succ, support - {u}, start, self.objective)
            if smaller is not None:
                found = smaller
                support = set(found[0]) | set(found[1])
        used = frozenset(v for v in support if v in self.rank)
        return used, (succ, found)

    def run(self, fixed: dict[int, int] | None = None):
        if fixed:
            self.choice.update(fixed)
        order = [v for v in self.branching if v not in self.choice]
        # externally fixed choices rank first so refutations still report them
        pinned = [v for v in self.branching if v in self.choice]
        self.rank = {v: i for i, v in enumerate(pinned + order)}
        return self._search(order, 0)

    def _search(self, order, idx):
        self.nodes += 1
        if self.nodes > self.limit:
            raise ResourceLimitError(f"strategy search exceeded {self.limit} nodes")
        refuted = self._refutation()
        if refuted is not None:
            return None, refuted
        if idx == len(order):
            return PositionalStrategy(self.choice), None
        v = order[idx]
        merged: set[int] = set()
        for w in self.arena.successors[v]:
            self.choice[v] = w
            found, conflict = self._search(order, idx + 1)
            del self.choice[v]
            if found is not None:
                return found, None
            used, _ = conflict
            if v not in used:
                return None, conflict
            merged |= used - {v}
        return None, (frozenset(merged), None)


def _search_subtree(arena, objective, fixed, limit):
    search = _StrategySearch(arena, objective, limit)
    found, conflict = search.run(fixed)
    return found, conflict, search.nodes


def solve_rabin_bruteforce(
    arena: Arena, objective: RabinObjective, limit: int = RABIN_BRUTEFORCE_LIMIT, jobs: int = 1
) -> SolveResult:
    """Decide a Rabin game by searching Steven's positional strategies.

    Sound because Rabin games are positional for Steven.  ``limit`` bounds
    the number of search nodes.  With ``jobs > 1`` the choices at the first
    branching vertex are explored in separate processes; the reported
    strategy is the same as for ``jobs = 1``.
    """
    objective.validate(arena.vertex_count)
    steven = arena.vertices_of(STEVEN)
    space = math.prod(len(arena.successors[v]) for v in steven)
    branching = [v for v in steven if len(arena.successors[v]) > 1]
    if jobs > 1 and branching:
        head = branching[0]
        parts = [{head: w} for w in arena.successors[head]]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_search_subtree, [arena] * len(parts), [objective] * len(parts), parts, [limit] * len(parts)))
        nodes = sum(o[2] for o in outcomes)
        for found, _, _ in outcomes:
            if found is not None:
                return SolveResult(STEVEN, "brute", strategy=found, stats={"nodes": nodes, "space": space})
        counter = None
        for _, (used, witness), _ in outcomes:
            if not used and witness is not None:
                counter = _lasso(*witness)
                break
        return SolveResult(AUDREY, "brute", counter=counter, stats={"nodes": nodes, "space": space})
    found, conflict, nodes = _search_subtree(arena, objective, None, limit)
    stats = {"nodes": nodes, "space": space}
    if found is not None:
        return SolveResult(STEVEN, "brute", strategy=found, stats=stats)
    used, witness = conflict
    # an empty dependency set means one lasso refutes every strategy
    counter = _lasso(*witness) if not used and witness is not None else None
    return SolveResult(AUDREY, "brute", counter=counter, stats=stats)


# ---------------------------------------------------------------------------
# appearance-record products


def _product_game(
    arena: Arena,
    start_record: tuple,
    update: Callable[[tuple, int], tuple[tuple, int]],
    limit: int,
) -> tuple[_ParityGame, int, dict]:
    """Explicit product of ``arena`` with a deterministic record, built by BFS.

    A state is ``(vertex, record, priority)``; the priority is the one emitted
    by the record update on entering the vertex.
    """
    index: dict[Hashable, int] = {}
    states: list[tuple] = []
    succ: list[list[int]] = []

    def intern(state):
        i = index.get(state)
        if i is None:
            if len(states) >= limit:
                raise ResourceLimitError(f"product game exceeds {limit} states")
            i = index[state] = len(states)
            states.append(state)
            succ.append([])
        return i

    v0 = arena.initial
    rec0, pr0 = update(start_record, v0)
    init = intern((v0, rec0, pr0))
    done = 0
    while done < len(states):
        i = done
        done += 1
        v, rec, _ = states[i]
        row = []
        for w in arena.successors[v]:
            rec2, pr2 = update(rec, w)
            row.append(intern((w, rec2, pr2)))
        succ[i] = row
    game = _ParityGame(
        succ,
        [arena.owner[s[0]] is STEVEN for s in states],
        [s[2] for s in states],
    )
    return game, init, {"states": len(states)}


def _iar_update(objective: RabinObjective, n: int):
    bad_of = [frozenset(i for i, (g, b) in enumerate(objective.pairs) if v in b) for v in range(n)]
    good_of = [frozenset(i for i, (g, b) in enumerate(objective.pairs) if v in g and v not in b) for v in range(n)]

    def update(record: tuple, v: int):
        bad, good = bad_of[v], good_of[v]
        hit = 0
        if bad:
            hit = max(p for p, i in enumerate(record, start=1) if i in bad)
            record = tuple(i for i in record if i in bad) + tuple(i for i in record if i not in bad)
        best = 0
        if good:
            best = max(p for p, i in enumerate(record, start=1) if i in good)
        return record, max(2 * best, 2 * hit + 1)

    return update


def solve_rabin_iar(
    arena: Arena,
    objective: RabinObjective,
    limit: int = IAR_LIMIT,
    initial_record: Sequence[int] | None = None,
) -> SolveResult:
    """Rabin game via index appearance records and a parity product.

    The record is a permutation of the pair indices.  Visiting a vertex moves
    the indices of pairs whose bad set contains it to the front; ``hit`` is
    the deepest position moved and ``best`` the deepest position of a pair
    whose good set (and not bad set) contains the vertex.  The state gets
    priority ``max(2*best, 2*hit + 1)``.  In the limit the indices whose
    bad sets recur fill the front of the record, so the largest recurring
    priority is even exactly when some other pair's good set recurs.
    """
    objective.validate(arena.vertex_count)
    k = objective.degree
    if math.factorial(k) * arena.vertex_count > limit:
        raise ResourceLimitError(f"k! * n = {math.factorial(k) * arena.vertex_count} exceeds {limit}")
    record = tuple(initial_record) if initial_record is not None else tuple(range(k))
    if sorted(record) != list(range(k)):
        raise ValidationError("initial record must be a permutation of the pair indices")
    game, init, stats = _product_game(arena, record, _iar_update(objective, arena.vertex_count), limit * (2 * k + 2))
    w_s, _, _, _ = zielonka(game)
    winner = STEVEN if init in w_s else AUDREY
    return SolveResult(winner, "iar", stats=stats)


def _lar_update(objective: MullerObjective):
    def update(record: tuple, v: int):
        moved = objective.colouring[v]
        hit = 0
        if moved:
            hit = max(p for p, c in enumerate(record, start=1) if c in moved)
            record = tuple(c for c in record if c in moved) + tuple(c for c in record if c not in moved)
        # the first `hit` entries are the same set before and after the move
        seen = frozenset(record[:hit])
        return record, 2 * hit + (2 if objective.accepts(seen) else 3)

    return update


def solve_muller_lar(arena: Arena, objective: MullerObjective, max_colours: int = LAR_MAX_COLOURS) -> SolveResult:
    """Muller game via latest appearance records over colours.

    Each vertex moves its colour set to the front of the record.  With ``hit``
    the deepest moved position, the prefix of length ``hit`` is the set of
    colours seen since the last visit of the colour that sat there; in the
    limit that prefix equals the recurring colour set infinitely often, and
    it is emitted with priority ``2*hit + 2`` (in the family) or
    ``2*hit + 3`` (not in it).
    """
    objective.validate(arena.vertex_count)
    K = objective.num_colours
    if K > max_colours:
        raise ResourceLimitError(f"{K} colours exceed the appearance-record limit of {max_colours}")
    game, init, stats = _product_game(
        arena, tuple(range(1, K + 1)), _lar_update(objective), math.factorial(K) * (K + 1) * arena.vertex_count * 2 + 16
    )
    w_s, _, _, _ = zielonka(game)
    winner = STEVEN if init in w_s else AUDREY
    return SolveResult(winner, "lar", stats=stats)


def solve_genparity(arena: Arena, objective: GenParityObjective, method: str = "auto") -> SolveResult:
    """Generalised parity game through its Rabin encoding.

    Pairs with an empty good set can never be satisfied and are dropped
    before solving (one is kept so the objective stays well formed).
    """
    objective.validate(arena.vertex_count)
    rabin = genparity_to_rabin(objective)
    useful = tuple(p for p in rabin.pairs if p[0]) or rabin.pairs[:1]
    rabin = RabinObjective(useful)
    if method == "iar":
        res = solve_rabin_iar(arena, rabin)
    elif method == "brute":
        res = solve_rabin_bruteforce(arena, rabin)
    elif method == "auto":
        try:
            res = solve_rabin_bruteforce(arena, rabin)
        except ResourceLimitError:
            res = solve_rabin_iar(arena, rabin)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SolveResult(res.winner, f"genparity/{res.method}", strategy=res.strategy, counter=res.counter, stats=res.stats)


# ---------------------------------------------------------------------------
# k x k clique


def solve_clique_bruteforce(instance: CliqueInstance, limit: int = CLIQUE_LIMIT) -> frozenset | None:
    """First row clique in lexicographic order of column choices."""
    k = instance.k
    if k**k > limit:
        raise ResourceLimitError(f"{k}^{k} column choices exceed the limit {limit}")
    rows = range(1, k + 1)
    for cols in product(rows, repeat=k):
        ok = True
        for a in range(k):
            for c in range(a + 1, k):
                if not instance.adjacent((a + 1, cols[a]), (c + 1, cols[c])):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return frozenset(zip(rows, cols))
    return None
