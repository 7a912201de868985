from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permgames.errors import ResourceLimitError, ValidationError
from permgames.permsat import (
    Assignment,
    Formula,
    all_assignments,
    check,
    solve_backtracking,
    solve_bruteforce,
)
from permgames.reductions import CliqueInstance, clique_to_permsat

import oracles
from gen import binary_formulas, chain_formulas

CONTRA = Formula(2, (((1, 2),), ((2, 1),)))


def grid4_instance():
    """4x4 grid, all cross-row edges except ((3,4),(4,3))."""
    full = CliqueInstance(4, frozenset(CliqueInstance(4).cross_row_pairs()))
    return CliqueInstance(4, full.edges - {((3, 4), (4, 3))})


def grid4_order():
    # x_1 < y_4 < x_2 < y_1 < y_3 < x_3 < x_4 < y_2 < x_5, x_j = j, y_i = 5 + i
    return Assignment.from_order([1, 9, 2, 6, 8, 3, 4, 7, 5])


def test_formula_invariants():
    with pytest.raises(ValidationError):
        Formula(2, (((1, 1),),))
    with pytest.raises(ValidationError):
        Formula(2, (((1, 3),),))
    with pytest.raises(ValidationError):
        Formula(3, (((1, 2, 3),),), alpha=2)
    with pytest.raises(ValidationError):
        Formula(2, (((1, 2), (2, 1)),), beta=1)
    with pytest.raises(ValidationError):
        Formula(2, ((),))
    f = Formula(3, (((1, 2, 3), (2, 1)),))
    assert (f.alpha, f.beta) == (3, 2)


def test_assignment_is_permutation():
    with pytest.raises(ValidationError):
        Assignment((1, 1))
    a = Assignment.from_order([3, 1, 2])
    assert a[3] == 1 and a.order == [3, 1, 2]


def test_check_examples():
    assert check(Formula(2, (((1, 2),),)), Assignment((1, 2)))
    assert not any(check(CONTRA, a) for a in all_assignments(2))
    assert check(clique_to_permsat(grid4_instance()), grid4_order())


def test_grid4_non_edge_clause():
    f = clique_to_permsat(grid4_instance())
    assert ((8, 4), (5, 8), (9, 3), (4, 9)) in f.clauses


def test_check_arity_mismatch():
    with pytest.raises(ValidationError):
        check(CONTRA, Assignment((1, 2, 3)))


def test_bruteforce_examples():
    assert solve_bruteforce(Formula(3, ())) == Assignment((1, 2, 3))
    assert solve_bruteforce(CONTRA) is None
    assert solve_bruteforce(clique_to_permsat(CliqueInstance(2))) is None


def test_bruteforce_limit():
    with pytest.raises(ResourceLimitError):
        solve_bruteforce(Formula(11, ()))
    assert solve_bruteforce(Formula(4, ()), limit=4) is not None


def test_bruteforce_is_lexicographically_first():
    f = Formula(3, (((3, 1),),))
    first = next(p for p in permutations((1, 2, 3)) if p[2] < p[0])
    assert solve_bruteforce(f).positions == first


def test_backtracking_examples():
    assert solve_backtracking(Formula(3, ())) is not None
    assert solve_backtracking(CONTRA) is None
    assert solve_backtracking(clique_to_permsat(CliqueInstance(2))) is None
    w = solve_backtracking(Formula(3, (((1, 2, 3),),)))
    assert w[1] < w[2] < w[3]
    assert solve_backtracking(Formula(2, (((1, 2), (2, 1)),))) is not None


def test_backtracking_on_grid4():
    f = clique_to_permsat(grid4_instance())
    w = solve_backtracking(f)
    assert w is not None and check(f, w)


def test_exhaustive_small_patterns():
    # every formula over k=3 with at most two unit binary clauses
    lits = [(i, j) for i in range(1, 4) for j in range(1, 4) if i != j]
    for a in lits:
        for b in lits:
            f = Formula(3, (((a),), ((b),)))
            expect = oracles.permsat_satisfiable(3, f.clauses)
            assert (solve_bruteforce(f) is not None) == expect
            assert (solve_backtracking(f) is not None) == expect


@settings(max_examples=200, deadline=None)
@given(chain_formulas())
def test_solvers_match_oracle(f):
    expect = oracles.permsat_satisfiable(f.variable_count, f.clauses)
    b = solve_bruteforce(f)
    t = solve_backtracking(f)
    assert (b is not None) == expect == (t is not None)
    if b is not None:
        assert check(f, b) and check(f, t)
    else:
        assert not any(check(f, a) for a in all_assignments(f.variable_count))


@settings(max_examples=200, deadline=None)
@given(binary_formulas(max_k=5), st.data())
def test_check_order_isomorphism(f, data):
    k = f.variable_count
    a = data.draw(st.permutations(list(range(1, k + 1)))).copy()
    values = sorted(data.draw(st.lists(st.integers(-10**6, 10**6), min_size=k, max_size=k, unique=True)))
    pos = Assignment(tuple(a))
    # the same relative order realised by arbitrary distinct integers
    spread = {v: values[pos[v] - 1] for v in range(1, k + 1)}
    direct = all(
        any(all(spread[x] < spread[y] for x, y in zip(l, l[1:])) for l in c) for c in f.clauses
    )
    assert check(f, pos) == direct
