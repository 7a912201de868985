"""Reductions from grid clique through permutation SAT to Rabin, Muller and
generalized parity games, with independent solvers for each problem."""

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
    evaluate_lasso,
    restrict,
)
from .errors import (
    ContractError,
    ParseError,
    PermGamesError,
    ResourceLimitError,
    StructuralError,
    ValidationError,
)
from .permsat import Assignment, Formula, check, solve_backtracking, solve_bruteforce
from .reductions import (
    CliqueInstance,
    clique_to_permsat,
    decode_permutation_to_clique,
    genparity_to_rabin,
    parity_to_rabin,
    permsat_to_genparity2,
    permsat_to_rabin,
    rabin_to_genparity,
    rabin_to_muller,
)
from .solvers import (
    SolveResult,
    audrey_counter_check,
    solve_clique_bruteforce,
    solve_genparity,
    solve_muller_lar,
    solve_parity_zielonka,
    solve_rabin_bruteforce,
    solve_rabin_iar,
)

__version__ = "0.1.0"
