"""(alpha, beta)-Permutation SAT: formulas over chain literals and two solvers.

A chain literal ``(a, b, c)`` stands for ``x_a < x_b < x_c``.  A clause is a
disjunction of chain literals, a formula a conjunction of clauses.  Variables
are numbered from 1.  Assignments are permutations: variable ``i`` is placed
at position ``assignment[i]`` in ``1..k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .errors import ResourceLimitError, ValidationError

Literal = tuple[int, ...]
Clause = tuple[Literal, ...]

BRUTEFORCE_LIMIT = 10


@dataclass(frozen=True)
class Formula:
    variable_count: int
    clauses: tuple[Clause, ...]
    alpha: int = 0
    beta: int = 0
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        clauses = tuple(tuple(tuple(int(x) for x in lit) for lit in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
        k = self.variable_count
        if k < 1:
            raise ValidationError("a formula needs at least one variable")
        if self.names is not None and len(self.names) != k:
            raise ValidationError("name table does not match the variable count")
        if self.alpha == 0:
            object.__setattr__(self, "alpha", max((len(l) for c in clauses for l in c), default=2))
        if self.beta == 0:
            object.__setattr__(self, "beta", max((len(c) for c in clauses), default=1))
        if self.alpha < 2 or self.beta < 1:
            raise ValidationError(f"need alpha >= 2 and beta >= 1, got ({self.alpha}, {self.beta})")
        for n, clause in enumerate(clauses, start=1):
            if not 1 <= len(clause) <= self.beta:
                raise ValidationError(f"clause {n} has width {len(clause)}, allowed 1..{self.beta}")
            for lit in clause:
                if not 2 <= len(lit) <= self.alpha:
                    raise ValidationError(f"clause {n}: literal of length {len(lit)}, allowed 2..{self.alpha}")
                if any(not 1 <= x <= k for x in lit):
                    raise ValidationError(f"clause {n}: variable index outside 1..{k}")
                if len(set(lit)) != len(lit):
                    raise ValidationError(f"clause {n}: repeated variable inside a literal")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def variable_name(self, i: int) -> str:
        return self.names[i - 1] if self.names is not None else f"x_{i}"

    def literal_text(self, lit: Literal) -> str:
        return "<".join(self.variable_name(i) for i in lit)

    def __str__(self) -> str:
        return " & ".join(
            "(" + " | ".join(self.literal_text(l) for l in c) + ")" for c in self.clauses
        ) or "true"


@dataclass(frozen=True)
class Assignment:
    """Variable -> position map; ``positions[i-1]`` is the position of ``x_i``."""

    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(int(p) for p in self.positions))
        k = len(self.positions)
        if sorted(self.positions) != list(range(1, k + 1)):
            raise ValidationError("assignment is not a permutation of 1..k")

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Assignment":
        """Build from the variables listed from smallest to largest."""
        pos = [0] * len(order)
        for p, var in enumerate(order, start=1):
            if not 1 <= var <= len(order):
                raise ValidationError(f"variable {var} out of range")
            pos[var - 1] = p
        return cls(tuple(pos))

    def __getitem__(self, var: int) -> int:
        return self.positions[var - 1]

    def __len__(self) -> int:
        return len(self.positions)

    @property
    def order(self) -> list[int]:
        out = [0] * len(self.positions)
        for var, p in enumerate(self.positions, start=1):
            out[p - 1] = var
        return out


def literal_holds(lit: Literal, value) -> bool:
    """``value`` maps a variable to any comparable key (position, integer, ...)."""
    return all(value(a) < value(b) for a, b in zip(lit, lit[1:]))


def check(formula: Formula, assignment: Assignment) -> bool:
    if len(assignment) != formula.variable_count:
        raise ValidationError(
            f"assignment covers {len(assignment)} variables, formula has {formula.variable_count}"
        )
    value = assignment.__getitem__
    return all(any(literal_holds(l, value) for l in c) for c in formula.clauses)


def satisfied_literal(clause: Clause, assignment: Assignment) -> Literal | None:
    """First literal of ``clause`` made true by ``assignment``."""
    for lit in clause:
        if literal_holds(lit, assignment.__getitem__):
            return lit
    return None


def solve_bruteforce(formula: Formula, limit: int = BRUTEFORCE_LIMIT) -> Assignment | None:
    """Lexicographically first satisfying permutation, by plain enumeration."""
    k = formula.variable_count
    if k > limit:
        raise ResourceLimitError(f"brute force over {k}! permutations exceeds the limit k <= {limit}")
    clauses = formula.clauses
    for positions in permutations(range(1, k + 1)):
        value = positions.__getitem__
        # positions is 0-indexed by variable-1
        if all(any(all(value(a - 1) < value(b - 1) for a, b in zip(l, l[1:])) for l in c) for c in clauses):
            return Assignment(positions)
    return None


def solve_backtracking(formula: Formula) -> Assignment | None:
    """Place variables from the lowest position upwards, pruning dead clauses.

    A literal dies as soon as some variable of it is placed while its
    predecessor in the chain is still unplaced; a clause whose literals are
    all dead refutes the current prefix.
    """
    k = formula.variable_count
    counts = [0] * (k + 1)
    for c in formula.clauses:
        for lit in c:
            for x in lit:
                counts[x] += 1
    candidates = sorted(range(1, k + 1), key=lambda x: (-counts[x], x))

    # watch[x]: (clause index, literal index) for literals where x has a predecessor
    watch: list[list[tuple[int, int, int]]] = [[] for _ in range(k + 1)]
    for ci, c in enumerate(formula.clauses):
        for li, lit in enumerate(c):
            for a, b in zip(lit, lit[1:]):
                watch[b].append((ci, li, a))
    alive = [len(c) for c in formula.clauses]
    dead = [[False] * len(c) for c in formula.clauses]
    placed = [False] * (k + 1)
    order: list[int] = []

    def place(x: int) -> list[tuple[int, int]] | None:
        killed = []
        conflict = False
        for ci, li, a in watch[x]:
            if not placed[a] and not dead[ci][li]:
                dead[ci][li] = True
                alive[ci] -= 1
                killed.append((ci, li))
                if alive[ci] == 0:
                    conflict = True
        placed[x] = True
        order.append(x)
        if conflict:
            unplace(x, killed)
            return None
        return killed

    def unplace(x: int, killed: list[tuple[int, int]]) -> None:
        for ci, li in killed:
            dead[ci][li] = False
            alive[ci] += 1
        placed[x] = False
        order.pop()

    def search() -> bool:
        if len(order) == k:
            return True
        for x in candidates:
            if placed[x]:
                continue
            killed = place(x)
            if killed is None:
                continue
            if search():
                return True
            unplace(x, killed)
        return False

    if any(a == 0 for a in alive):
        return None
    if not search():
        return None
    return Assignment.from_order(order)


def all_assignments(k: int) -> Iterable[Assignment]:
    for positions in permutations(range(1, k + 1)):
        yield Assignment(positions)


def enumeration_size(formula: Formula) -> int:
    return math.factorial(formula.variable_count)
