"""From a grid clique problem to a Rabin game and back.

Run: python demos/01_clique_to_game.py
"""

from permgames.arena import STEVEN
from permgames.permsat import solve_backtracking
from permgames.reductions import (
    CliqueInstance,
    clique_to_permsat,
    decode_permutation_to_clique,
    permsat_to_rabin,
    strategy_from_assignment,
)
from permgames.solvers import audrey_counter_check, solve_clique_bruteforce, solve_rabin_bruteforce

# 3x3 grid, every cross-row edge present except two
full = CliqueInstance(3, frozenset(CliqueInstance(3).cross_row_pairs()))
g = CliqueInstance(3, full.edges - {((1, 1), (2, 1)), ((2, 2), (3, 3))})
print("row clique by enumeration:", sorted(solve_clique_bruteforce(g)))

# each missing edge becomes one 4-clause
phi = clique_to_permsat(g)
print(f"formula: {phi.variable_count} variables, {phi.clause_count} clauses")
print("  the two non-edge clauses:")
for c in phi.clauses[-2:]:
    print("   ", " | ".join(phi.literal_text(l) for l in c))

order = solve_backtracking(phi)
print("a satisfying order:", " < ".join(phi.variable_name(v) for v in order.order))
print("decoded back to a clique:", sorted(decode_permutation_to_clique(g, order)))

# the formula as a game; the order tells Steven which literal to pick per clause
arena, rabin = permsat_to_rabin(phi)
print(f"game: {arena.vertex_count} vertices, {arena.edge_count} edges, {rabin.degree} pairs")
sigma = strategy_from_assignment(phi, arena, order)
print("Audrey can beat the order's strategy:", audrey_counter_check(arena, rabin, sigma) is not None)

res = solve_rabin_bruteforce(arena, rabin)
print("game winner:", res.winner, f"({res.stats['nodes']} search nodes of {res.stats['space']} strategies)")
assert res.winner is STEVEN
