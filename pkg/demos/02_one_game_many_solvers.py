"""One random Rabin game, decided five different ways.

Run: python demos/02_one_game_many_solvers.py [seed]
"""

import sys

from permgames.instances import gen_rabin, write_game
from permgames.reductions import genparity_to_rabin, rabin_to_genparity, rabin_to_muller
from permgames.solvers import solve_genparity, solve_muller_lar, solve_rabin_bruteforce, solve_rabin_iar

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
arena, rabin = gen_rabin(6, 2, 0.35, seed)
print(write_game(arena, rabin))

n = arena.vertex_count
brute = solve_rabin_bruteforce(arena, rabin)
iar = solve_rabin_iar(arena, rabin)
lar = solve_muller_lar(arena, rabin_to_muller(rabin, n))
gp = solve_genparity(arena, rabin_to_genparity(rabin, n))
back = solve_rabin_bruteforce(arena, genparity_to_rabin(rabin_to_genparity(rabin, n)))

print(f"strategy search   {brute.winner}  nodes={brute.stats['nodes']}")
print(f"index records     {iar.winner}  product states={iar.stats['states']}")
print(f"Muller via LAR    {lar.winner}  product states={lar.stats['states']}")
print(f"generalized par.  {gp.winner}")
print(f"there and back    {back.winner}")

if brute.strategy is not None:
    print("Steven's positional strategy:")
    for v, w in brute.strategy.items():
        print(f"  {v} -> {w}")
elif brute.counter is not None:
    print("one lasso beats every Steven strategy:", brute.counter)
