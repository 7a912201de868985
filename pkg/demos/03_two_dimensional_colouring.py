"""The two-dimensional colouring of the permutation SAT game, checked.

The literal vertex [x_j<x_i] gets colour (2j+1, 2i).  Its second coordinate
is even on every literal vertex and the other vertices are coloured (1, 1),
so along any play the largest recurring second coordinate is even and the
second parity condition always holds.  Steven therefore wins every such
game, including games built from unsatisfiable formulas.

Run: python demos/03_two_dimensional_colouring.py
"""

from permgames.instances import gen_permsat
from permgames.arena import STEVEN
from permgames.permsat import Formula, solve_bruteforce
from permgames.reductions import permsat_to_genparity2, permsat_to_rabin
from permgames.solvers import solve_genparity, solve_rabin_bruteforce

phi = Formula(2, (((1, 2),), ((2, 1),)))
arena, gp = permsat_to_genparity2(phi)
print("formula:", phi, "| satisfiable:", solve_bruteforce(phi) is not None)
for v in range(arena.vertex_count):
    print(f"  {arena.name(v):10} colour {gp.vectors[v]}")
print("Rabin game winner:     ", solve_rabin_bruteforce(*permsat_to_rabin(phi)).winner)
print("2-dim parity winner:   ", solve_genparity(arena, gp).winner)

tally = {"sat": 0, "unsat": 0, "unsat but Steven": 0}
for s in range(200):
    f = gen_permsat(2 + s % 4, 1 + (s // 4) % 6, 4, s)
    sat = solve_bruteforce(f) is not None
    tally["sat" if sat else "unsat"] += 1
    if not sat and solve_genparity(*permsat_to_genparity2(f)).winner is STEVEN:
        tally["unsat but Steven"] += 1
print("200 random formulas:", tally)
