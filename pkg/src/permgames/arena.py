"""Game arenas, winning objectives, lassos and positional strategies.

Vertices are the integers ``0 .. n-1``.  Human readable vertex names (for
instance ``"[x_1<x_2]"``) live in an optional side table on the arena and
are only used for display and export.

Every objective answers one question, :meth:`steven_wins`, about the set of
vertices visited infinitely often.  A :class:`Lasso` is the finite
representation of an ultimately periodic play, so its cycle is exactly that
set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import StructuralError, ValidationError


class Player(enum.Enum):
    STEVEN = "S"
    AUDREY = "A"

    @property
    def opponent(self) -> "Player":
        return Player.AUDREY if self is Player.STEVEN else Player.STEVEN

    def __str__(self) -> str:
        return "Steven" if self is Player.STEVEN else "Audrey"


STEVEN = Player.STEVEN
AUDREY = Player.AUDREY


@dataclass(frozen=True)
class Arena:
    """Finite directed game graph with an ownership partition.

    Use :meth:`from_edges` to build one; the constructor expects successor
    lists that are already sorted.
    """

    owner: tuple[Player, ...]
    successors: tuple[tuple[int, ...], ...]
    initial: int = 0
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.owner)
        if n < 1:
            raise ValidationError("an arena needs at least one vertex")
        if len(self.successors) != n:
            raise ValidationError("successor table does not match the vertex count")
        if not 0 <= self.initial < n:
            raise ValidationError(f"initial vertex {self.initial} out of range")
        if self.names is not None and len(self.names) != n:
            raise ValidationError("name table does not match the vertex count")
        for v, succ in enumerate(self.successors):
            if not succ:
                raise StructuralError(f"vertex {v} has no outgoing edge")
            if any(not 0 <= w < n for w in succ):
                raise ValidationError(f"vertex {v} has an edge leaving the arena")
            if len(set(succ)) != len(succ):
                raise ValidationError(f"vertex {v} has a duplicate edge")
            if list(succ) != sorted(succ):
                raise ValidationError(f"successors of vertex {v} are not sorted")

    @classmethod
    def from_edges(
        cls,
        owner: Sequence[Player],
        edges: Iterable[tuple[int, int]],
        initial: int = 0,
        names: Sequence[str] | None = None,
    ) -> "Arena":
        n = len(owner)
        succ: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) refers to a missing vertex")
            succ[u].append(v)
        for v, row in enumerate(succ):
            if len(set(row)) != len(row):
                raise ValidationError(f"vertex {v} has a duplicate edge")
        return cls(
            owner=tuple(owner),
            successors=tuple(tuple(sorted(row)) for row in succ),
            initial=initial,
            names=tuple(names) if names is not None else None,
        )

    @property
    def vertex_count(self) -> int:
        return len(self.owner)

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.successors)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, succ in enumerate(self.successors):
            for v in succ:
                yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.successors[u]

    def vertices_of(self, player: Player) -> list[int]:
        return [v for v, p in enumerate(self.owner) if p is player]

    def name(self, v: int) -> str:
        if self.names is None:
            return str(v)
        return self.names[v]

    def predecessors(self) -> list[list[int]]:
        pred: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges():
            pred[v].append(u)
        return pred


# ---------------------------------------------------------------------------
# objectives


def _check_vertex_set(vs: frozenset[int], n: int, what: str) -> None:
    bad = [v for v in vs if not 0 <= v < n]
    if bad:
        raise ValidationError(f"{what} contains vertices outside the arena: {sorted(bad)}")


@dataclass(frozen=True)
class RabinObjective:
    """Pairs ``(G_i, B_i)``; Steven wins if some ``G_i`` recurs while ``B_i`` does not."""

    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]

    def __post_init__(self):
        if len(self.pairs) < 1:
            raise ValidationError("a Rabin objective needs at least one pair")
        object.__setattr__(
            self,
            "pairs",
            tuple((frozenset(g), frozenset(b)) for g, b in self.pairs),
        )

    @property
    def degree(self) -> int:
        return len(self.pairs)

    def validate(self, n: int) -> None:
        for i, (g, b) in enumerate(self.pairs, start=1):
            _check_vertex_set(g, n, f"G_{i}")
            _check_vertex_set(b, n, f"B_{i}")

    def satisfied_pairs(self, inf: frozenset[int]) -> list[int]:
        """0-based indices of pairs whose condition holds on ``inf``."""
        return [i for i, (g, b) in enumerate(self.pairs) if inf & g and not inf & b]

    def steven_wins(self, inf: frozenset[int]) -> bool:
        # B membership dominates: a vertex in G_i and B_i never helps pair i
        return any(inf & g and not inf & b for g, b in self.pairs)


@dataclass(frozen=True)
class MullerObjective:
    """Colour sets on vertices plus a winning family of colour sets.

    The family is either explicit (``family``) or, for objectives produced
    from a Rabin condition with too many colours to enumerate, implicit:
    ``rabin_degree = k`` means colours ``2i-1`` / ``2i`` are the good / bad
    colours of pair ``i`` and a set wins iff it holds some good colour
    without its bad partner.
    """

    colouring: tuple[frozenset[int], ...]
    num_colours: int
    family: frozenset[frozenset[int]] | None = None
    rabin_degree: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "colouring", tuple(frozenset(c) for c in self.colouring))
        if self.family is not None:
            object.__setattr__(self, "family", frozenset(frozenset(c) for c in self.family))
        if self.num_colours < 0:
            raise ValidationError("negative colour count")
        if (self.family is None) == (self.rabin_degree is None):
            raise ValidationError("give exactly one of an explicit family or a Rabin degree")
        if self.rabin_degree is not None and 2 * self.rabin_degree != self.num_colours:
            raise ValidationError("an implicit Rabin family needs exactly 2k colours")
        domain = range(1, self.num_colours + 1)
        for v, cs in enumerate(self.colouring):
            if any(c not in domain for c in cs):
                raise ValidationError(f"vertex {v} uses a colour outside 1..{self.num_colours}")
        if self.family is not None:
            for member in self.family:
                if any(c not in domain for c in member):
                    raise ValidationError(f"family member {sorted(member)} is not a subset of the colours")

    def validate(self, n: int) -> None:
        if len(self.colouring) != n:
            raise ValidationError(f"colouring has {len(self.colouring)} entries for {n} vertices")

    def accepts(self, colours: frozenset[int]) -> bool:
        if self.family is not None:
            return frozenset(colours) in self.family
        return any(
            2 * i - 1 in colours and 2 * i not in colours
            for i in range(1, self.rabin_degree + 1)
        )

    def colours_of(self, vertices: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for v in vertices:
            out |= self.colouring[v]
        return frozenset(out)

    def steven_wins(self, inf: frozenset[int]) -> bool:
        return self.accepts(self.colours_of(inf))


@dataclass(frozen=True)
class ParityObjective:
    """One colour per vertex; Steven wins iff the largest recurring colour is even."""

    colours: tuple[int, ...]
    max_colour: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(int(c) for c in self.colours))
        if not self.colours:
            raise ValidationError("empty colouring")
        if self.max_colour == 0:
            object.__setattr__(self, "max_colour", max(self.colours))
        bad = [c for c in self.colours if not 1 <= c <= self.max_colour]
        if bad:
            raise ValidationError(f"colours {sorted(set(bad))} outside 1..{self.max_colour}")

    def validate(self, n: int) -> None:
        if len(self.colours) != n:
            raise ValidationError(f"colouring has {len(self.colours)} entries for {n} vertices")

    def steven_wins(self, inf: frozenset[int]) -> bool:
        return max(self.colours[v] for v in inf) % 2 == 0


@dataclass(frozen=True)
class GenParityObjective:
    """A disjunction of ``dimension`` parity conditions, one per coordinate."""

    vectors: tuple[tuple[int, ...], ...]
    max_colour: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(tuple(int(c) for c in v) for v in self.vectors))
        if not self.vectors:
            raise ValidationError("empty colouring")
        d = len(self.vectors[0])
        if d < 1:
            raise ValidationError("dimension must be at least 1")
        if any(len(v) != d for v in self.vectors):
            raise ValidationError("colour vectors of different lengths")
        if self.max_colour == 0:
            object.__setattr__(self, "max_colour", max(max(v) for v in self.vectors))
        for i, vec in enumerate(self.vectors):
            if any(not 1 <= c <= self.max_colour for c in vec):
                raise ValidationError(f"vertex {i} has a colour outside 1..{self.max_colour}")

    @property
    def dimension(self) -> int:
        return len(self.vectors[0])

    def validate(self, n: int) -> None:
        if len(self.vectors) != n:
            raise ValidationError(f"colouring has {len(self.vectors)} entries for {n} vertices")

    def steven_wins(self, inf: frozenset[int]) -> bool:
        return any(
            max(self.vectors[v][t] for v in inf) % 2 == 0 for t in range(self.dimension)
        )


Objective = Union[RabinObjective, MullerObjective, ParityObjective, GenParityObjective]


# ---------------------------------------------------------------------------
# plays and strategies


@dataclass(frozen=True)
class Lasso:
    """Ultimately periodic play ``prefix . cycle^omega``."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise StructuralError("a lasso needs a nonempty cycle")

    @property
    def infinity_set(self) -> frozenset[int]:
        return frozenset(self.cycle)

    def validate(self, arena: Arena) -> None:
        n = arena.vertex_count
        walk = self.prefix + self.cycle + (self.cycle[0],)
        if any(not 0 <= v < n for v in walk):
            raise StructuralError("lasso visits a vertex outside the arena")
        if walk[0] != arena.initial:
            raise StructuralError(f"lasso starts at {walk[0]}, not at the initial vertex")
        for u, v in zip(walk, walk[1:]):
            if not arena.has_edge(u, v):
                raise StructuralError(f"lasso uses the non-edge {u} -> {v}")

    def rotated(self, shift: int) -> "Lasso":
        """Same play with ``shift`` cycle vertices moved into the prefix."""
        prefix = list(self.prefix)
        cycle = list(self.cycle)
        for _ in range(shift % len(cycle)):
            v = cycle.pop(0)
            prefix.append(v)
            cycle.append(v)
        return Lasso(tuple(prefix), tuple(cycle))


class PositionalStrategy(Mapping[int, int]):
    """Memoryless choice of a successor for each vertex of one player."""

    __slots__ = ("_choices",)

    def __init__(self, choices: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = choices.items() if isinstance(choices, Mapping) else choices
        self._choices = dict(sorted((int(v), int(w)) for v, w in items))

    def __getitem__(self, v: int) -> int:
        return self._choices[v]

    def __iter__(self):
        return iter(self._choices)

    def __len__(self) -> int:
        return len(self._choices)

    def __eq__(self, other):
        if isinstance(other, PositionalStrategy):
            return self._choices == other._choices
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._choices.items()))

    def __repr__(self) -> str:
        return f"PositionalStrategy({self._choices})"

    def validate(self, arena: Arena, player: Player = STEVEN) -> None:
        mine = set(arena.vertices_of(player))
        if set(self._choices) != mine:
            missing = sorted(mine - set(self._choices))
            extra = sorted(set(self._choices) - mine)
            raise StructuralError(
                f"strategy domain mismatch (missing {missing}, foreign {extra})"
            )
        for v, w in self._choices.items():
            if not arena.has_edge(v, w):
                raise StructuralError(f"strategy picks the non-edge {v} -> {w}")


# ---------------------------------------------------------------------------
# operations


def evaluate_lasso(arena: Arena, objective: Objective, lasso: Lasso) -> Player:
    """Winner of the ultimately periodic play described by ``lasso``."""
    lasso.validate(arena)
    objective.validate(arena.vertex_count)
    return STEVEN if objective.steven_wins(lasso.infinity_set) else AUDREY


def restrict(arena: Arena, strategy: PositionalStrategy, player: Player = STEVEN) -> Arena:
    """One-player arena in which ``player`` always follows ``strategy``."""
    strategy.validate(arena, player)
    succ = tuple(
        (strategy[v],) if arena.owner[v] is player else arena.successors[v]
        for v in range(arena.vertex_count)
    )
    return Arena(arena.owner, succ, arena.initial, arena.names)


def strongly_connected_components(
    successors: Sequence[Iterable[int]], alive: Iterable[int] | None = None
) -> list[list[int]]:
    """Tarjan's algorithm (iterative) restricted to the ``alive`` vertices."""
    if alive is None:
        alive_set = set(range(len(successors)))
    else:
        alive_set = set(alive)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in sorted(alive_set):
        if root in index:
            continue
        work = [(root, iter(successors[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in alive_set:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def reachable(successors: Sequence[Iterable[int]], start: int, alive: set[int] | None = None) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in successors[v]:
            if w not in seen and (alive is None or w in alive):
                seen.add(w)
                todo.append(w)
    return seen


def shortest_path(
    successors: Sequence[Iterable[int]], start: int, goal: int, alive: set[int] | None = None
) -> list[int]:
    """Vertices of a shortest path ``start .. goal`` (both included)."""
    parent = {start: start}
    frontier = [start]
    while frontier and goal not in parent:
        nxt = []
        for v in frontier:
            for w in successors[v]:
                if w not in parent and (alive is None or w in alive):
                    parent[w] = v
                    nxt.append(w)
        frontier = nxt
    if goal not in parent:
        raise StructuralError(f"{goal} is not reachable from {start}")
    path = [goal]
    while path[-1] != start:
        path.append(parent[path[-1]])
    return path[::-1]


def covering_cycle(successors: Sequence[Iterable[int]], component: Iterable[int]) -> list[int]:
    """A closed walk inside a strongly connected ``component`` visiting all of it.

    The walk is returned without repeating its first vertex at the end.
    """
    comp = sorted(component)
    alive = set(comp)
    start = comp[0]
    if len(comp) == 1:
        if start not in successors[start]:
            raise StructuralError(f"singleton {start} carries no cycle")
        return [start]
    # greedy: always walk to the nearest vertex not yet visited, then home
    walk = [start]
    todo = alive - {start}
    while todo:
        walk.extend(_path_to_any(successors, walk[-1], todo, alive)[1:])
        todo -= set(walk)
    walk.extend(shortest_path(successors, walk[-1], start, alive)[1:])
    return walk[:-1]


def _path_to_any(successors, start: int, goals: set[int], alive: set[int]) -> list[int]:
    parent = {start: start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in successors[v]:
                if w in alive and w not in parent:
                    parent[w] = v
                    if w in goals:
                        path = [w]
                        while path[-1] != start:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    nxt.append(w)
        frontier = nxt
    raise StructuralError(f"no vertex of {sorted(goals)} is reachable from {start}")


def is_nontrivial(successors: Sequence[Iterable[int]], component: Sequence[int]) -> bool:
    return len(component) > 1 or component[0] in successors[component[0]]


def all_positional_strategies(arena: Arena, player: Player = STEVEN) -> Iterator[PositionalStrategy]:
    """Every positional strategy of ``player``, in lexicographic order."""
    from itertools import product

    mine = arena.vertices_of(player)
    for choice in product(*(arena.successors[v] for v in mine)):
        yield PositionalStrategy(zip(mine, choice))


def play_of(arena: Arena, steven: PositionalStrategy, audrey: PositionalStrategy) -> Lasso:
    """The unique lasso produced when both players play positionally."""
    pos: dict[int, int] = {}
    walk: list[int] = []
    v = arena.initial
    while v not in pos:
        pos[v] = len(walk)
        walk.append(v)
        v = steven[v] if arena.owner[v] is STEVEN else audrey[v]
    start = pos[v]
    return Lasso(tuple(walk[:start]), tuple(walk[start:]))


def subsets(items: Sequence[int]) -> Iterator[frozenset[int]]:
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)
