"""Instance compilers along the chain clique -> permutation SAT -> games.

Each function is total on valid inputs and deterministic: equal inputs give
equal outputs, down to vertex numbering and name tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from .arena import (
    AUDREY,
    STEVEN,
    Arena,
    GenParityObjective,
    MullerObjective,
    ParityObjective,
    PositionalStrategy,
    RabinObjective,
)
from .errors import ContractError, ValidationError
from .permsat import Assignment, Formula, check, satisfied_literal

Cell = tuple[int, int]
Edge = tuple[Cell, Cell]

# largest colour count for which a Rabin-derived Muller family is listed explicitly
EXPLICIT_FAMILY_MAX_COLOURS = 12


@dataclass(frozen=True)
class CliqueInstance:
    """Graph on the ``k x k`` grid; cells are ``(row, column)``, 1-based."""

    k: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("grid size must be positive")
        canon = set()
        for u, v in self.edges:
            u, v = tuple(u), tuple(v)
            for cell in (u, v):
                if len(cell) != 2 or not all(1 <= c <= self.k for c in cell):
                    raise ValidationError(f"cell {cell} is not on the {self.k}x{self.k} grid")
            if u == v:
                raise ValidationError(f"self-edge at {u}")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(canon))

    def adjacent(self, u: Cell, v: Cell) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def cross_row_pairs(self):
        """Unordered pairs of cells in different rows, in lexicographic order."""
        cells = [(i, j) for i in range(1, self.k + 1) for j in range(1, self.k + 1)]
        for u, v in combinations(cells, 2):
            if u[0] != v[0]:
                yield u, v

    def is_row_clique(self, cells) -> bool:
        cells = sorted(cells)
        if sorted(c[0] for c in cells) != list(range(1, self.k + 1)):
            return False
        return all(self.adjacent(u, v) for u, v in combinations(cells, 2))


# ---------------------------------------------------------------------------
# clique -> 4-Permutation SAT


def x_var(k: int, j: int) -> int:
    """Index of ``x_j`` (``1 <= j <= k+1``) in the clique formula."""
    return j


def y_var(k: int, i: int) -> int:
    return k + 1 + i


def clique_to_permsat(instance: CliqueInstance) -> Formula:
    k = instance.k
    x = lambda j: x_var(k, j)  # noqa: E731
    y = lambda i: y_var(k, i)  # noqa: E731
    clauses = []
    clauses += [((x(j), x(j + 1)),) for j in range(1, k + 1)]
    clauses += [((x(1), y(i)),) for i in range(1, k + 1)]
    clauses += [((y(i), x(k + 1)),) for i in range(1, k + 1)]
    for (a, b), (c, d) in instance.cross_row_pairs():
        if instance.adjacent((a, b), (c, d)):
            continue
        clauses.append(((y(a), x(b)), (x(b + 1), y(a)), (y(c), x(d)), (x(d + 1), y(c))))
    names = [f"x_{j}" for j in range(1, k + 2)] + [f"y_{i}" for i in range(1, k + 1)]
    return Formula(2 * k + 1, tuple(clauses), alpha=2, beta=4, names=tuple(names))


def clique_to_permutation(instance: CliqueInstance, clique) -> Assignment:
    """Order ``x_1 < (rows in column 1) < x_2 < ... < x_{k+1}`` for a row clique."""
    k = instance.k
    column = dict(clique)
    if sorted(column) != list(range(1, k + 1)):
        raise ContractError("need exactly one cell per row")
    order = [x_var(k, 1)]
    for j in range(1, k + 1):
        order += [y_var(k, i) for i in range(1, k + 1) if column[i] == j]
        order.append(x_var(k, j + 1))
    return Assignment.from_order(order)


def decode_permutation_to_clique(instance: CliqueInstance, assignment: Assignment) -> frozenset[Cell]:
    """Row clique ``{(i, j_i)}`` with ``x_{j_i} < y_i < x_{j_i+1}``."""
    k = instance.k
    formula = clique_to_permsat(instance)
    if len(assignment) != formula.variable_count or not check(formula, assignment):
        raise ContractError("assignment does not satisfy the clique formula")
    cells = set()
    for i in range(1, k + 1):
        py = assignment[y_var(k, i)]
        for j in range(1, k + 1):
            if assignment[x_var(k, j)] < py < assignment[x_var(k, j + 1)]:
                cells.add((i, j))
                break
    return frozenset(cells)


# ---------------------------------------------------------------------------
# 4-Permutation SAT -> Rabin / 2-dimensional parity


def _require_binary(formula: Formula) -> None:
    for n, clause in enumerate(formula.clauses, start=1):
        if any(len(lit) != 2 for lit in clause):
            raise ValidationError(f"clause {n} has a literal that is not of the form x_i < x_j")
    if not formula.clauses:
        raise ValidationError("the game construction needs at least one clause")


def literal_vertex(formula: Formula, i: int, j: int) -> int:
    """Vertex ``[x_i < x_j]`` of the game built from ``formula``."""
    k = formula.variable_count
    if i == j or not (1 <= i <= k and 1 <= j <= k):
        raise ValidationError(f"no literal vertex for ({i}, {j})")
    offset = (i - 1) * (k - 1) + (j - 1 if j < i else j - 2)
    return 1 + formula.clause_count + offset


def _permsat_arena(formula: Formula) -> Arena:
    _require_binary(formula)
    k, m = formula.variable_count, formula.clause_count
    n = 1 + m + k * (k - 1)
    owner = [AUDREY] + [STEVEN] * (n - 1)
    names = ["Δ"] + [f"[C_{l}]" for l in range(1, m + 1)] + [""] * (k * (k - 1))
    edges = set()
    for l, clause in enumerate(formula.clauses, start=1):
        edges.add((0, l))
        for i, j in clause:
            edges.add((l, literal_vertex(formula, i, j)))
    for i, j in product(range(1, k + 1), repeat=2):
        if i != j:
            v = literal_vertex(formula, i, j)
            names[v] = f"[{formula.variable_name(i)}<{formula.variable_name(j)}]"
            edges.add((v, 0))
    return Arena.from_edges(owner, edges, initial=0, names=names)


def permsat_to_rabin(formula: Formula) -> tuple[Arena, RabinObjective]:
    arena = _permsat_arena(formula)
    k = formula.variable_count
    pairs = []
    for i in range(1, k + 1):
        good = frozenset(literal_vertex(formula, j, i) for j in range(1, k + 1) if j != i)
        bad = frozenset(literal_vertex(formula, i, j) for j in range(1, k + 1) if j != i)
        pairs.append((good, bad))
    return arena, RabinObjective(tuple(pairs))


def permsat_to_genparity2(formula: Formula) -> tuple[Arena, GenParityObjective]:
    """Same arena, two-dimensional colouring ``[x_j<x_i] -> (2j+1, 2i)``."""
    arena = _permsat_arena(formula)
    k = formula.variable_count
    vectors = [(1, 1)] * arena.vertex_count
    for i, j in product(range(1, k + 1), repeat=2):
        if i != j:
            vectors[literal_vertex(formula, j, i)] = (2 * j + 1, 2 * i)
    return arena, GenParityObjective(tuple(vectors), max_colour=max(3, 2 * k + 1))


def strategy_from_assignment(formula: Formula, arena: Arena, assignment: Assignment) -> PositionalStrategy:
    """Each clause vertex points at its first literal made true by ``assignment``."""
    if not check(formula, assignment):
        raise ContractError("assignment does not satisfy the formula")
    choices = {}
    for l, clause in enumerate(formula.clauses, start=1):
        i, j = satisfied_literal(clause, assignment)
        choices[l] = literal_vertex(formula, i, j)
    for v in arena.vertices_of(STEVEN):
        if v > formula.clause_count:
            choices[v] = 0
    return PositionalStrategy(choices)


# ---------------------------------------------------------------------------
# objective encodings


def good_colour(i: int) -> int:
    """Muller colour of ``G_i`` (pairs numbered from 1)."""
    return 2 * i - 1


def bad_colour(i: int) -> int:
    return 2 * i


def rabin_to_muller(objective: RabinObjective, vertex_count: int) -> MullerObjective:
    k = objective.degree
    colouring = []
    for v in range(vertex_count):
        cs = set()
        for i, (g, b) in enumerate(objective.pairs, start=1):
            if v in g:
                cs.add(good_colour(i))
            if v in b:
                cs.add(bad_colour(i))
        colouring.append(frozenset(cs))
    if 2 * k > EXPLICIT_FAMILY_MAX_COLOURS:
        return MullerObjective(tuple(colouring), 2 * k, rabin_degree=k)
    family = set()
    for bits in range(1 << (2 * k)):
        cs = frozenset(c + 1 for c in range(2 * k) if bits >> c & 1)
        if any(good_colour(i) in cs and bad_colour(i) not in cs for i in range(1, k + 1)):
            family.add(cs)
    return MullerObjective(tuple(colouring), 2 * k, family=frozenset(family))


def rabin_to_genparity(objective: RabinObjective, vertex_count: int) -> GenParityObjective:
    vectors = []
    for v in range(vertex_count):
        vec = []
        for g, b in objective.pairs:
            if v in b:
                vec.append(3)
            elif v in g:
                vec.append(2)
            else:
                vec.append(1)
        vectors.append(tuple(vec))
    return GenParityObjective(tuple(vectors), max_colour=3)


def _parity_pairs(colours, count: int):
    return [
        (
            frozenset(v for v, c in enumerate(colours) if c >= 2 * i),
            frozenset(v for v, c in enumerate(colours) if c >= 2 * i + 1),
        )
        for i in range(1, count + 1)
    ]


def parity_to_rabin(objective: ParityObjective) -> RabinObjective:
    # with a single colour the formula gives no pair; i = 1 still yields (∅, ∅)
    count = max(1, objective.max_colour // 2)
    return RabinObjective(tuple(_parity_pairs(objective.colours, count)))


def genparity_to_rabin(objective: GenParityObjective) -> RabinObjective:
    per_dim = math.ceil(objective.max_colour / 2)
    pairs = []
    for t in range(objective.dimension):
        pairs += _parity_pairs([vec[t] for vec in objective.vectors], per_dim)
    return RabinObjective(tuple(pairs))
