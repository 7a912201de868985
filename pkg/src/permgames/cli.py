"""Command-line harness: solve, reduce, check-chain, gen, bench.

Exit codes: 0 success, 10 Steven wins / satisfiable, 20 Audrey wins /
unsatisfiable, 1 usage error, 2 input error, 3 resource limit, 4 solvers
disagree (check-chain only).  Every command ends with one machine-readable
line ``summary key=value ...`` whose ``exit`` field equals the exit code.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import statistics
import sys
import time
from collections import deque
from itertools import combinations
from pathlib import Path

from . import instances as inst
from .arena import STEVEN, Arena
from .errors import PermGamesError, ResourceLimitError, ValidationError
from .permsat import Formula, solve_backtracking, solve_bruteforce
from .reductions import (
    CliqueInstance,
    clique_to_permsat,
    genparity_to_rabin,
    parity_to_rabin,
    permsat_to_genparity2,
    permsat_to_rabin,
    rabin_to_genparity,
    rabin_to_muller,
)
from .solvers import (
    solve_clique_bruteforce,
    solve_genparity,
    solve_muller_lar,
    solve_parity_zielonka,
    solve_rabin_bruteforce,
    solve_rabin_iar,
)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_RESOURCE, EXIT_DISAGREE = 0, 1, 2, 3, 4
EXIT_STEVEN, EXIT_AUDREY = 10, 20

KINDS = ("clique", "psat", "rabin", "parity", "muller", "genparity")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Outcome:
    """Collects the human report and the summary fields of one command."""

    def __init__(self, out):
        self.out = out
        self.fields: dict[str, object] = {}

    def say(self, line: str = "") -> None:
        print(line, file=self.out)

    def finish(self, code: int) -> int:
        self.fields["exit"] = code
        body = " ".join(f"{k}={v}" for k, v in self.fields.items())
        print(f"summary {body}", file=self.out)
        return code


# ---------------------------------------------------------------------------
# solve

METHODS = {
    "clique": ("auto", "brute"),
    "psat": ("auto", "brute"),
    "rabin": ("auto", "brute", "iar"),
    "parity": ("auto", "zielonka", "brute", "iar"),
    "muller": ("auto", "lar"),
    "genparity": ("auto", "brute", "iar"),
}


def _print_strategy(res, arena: Arena, rep: Outcome) -> None:
    if res.strategy is not None:
        rep.say("strategy:")
        for v, w in res.strategy.items():
            rep.say(f"  {arena.name(v)} -> {arena.name(w)}")
    if res.counter is not None:
        cyc = " ".join(arena.name(v) for v in res.counter.cycle)
        rep.say(f"bad cycle: {cyc}")


def cmd_solve(args, rep: Outcome) -> int:
    kind, obj = inst.read_instance(args.file)
    method = args.method
    if method not in METHODS[kind]:
        raise UsageError(f"method {method!r} does not apply to {kind} instances (use {', '.join(METHODS[kind])})")
    rep.fields.update(kind=kind, method=method)
    if kind == "clique":
        clique = solve_clique_bruteforce(obj)
        found = clique is not None
        rep.say(f"clique: {'yes' if found else 'no'}")
        if found:
            rep.say("cells: " + " ".join(f"({i},{j})" for i, j in sorted(clique)))
        rep.fields["satisfiable"] = str(found).lower()
        return rep.finish(EXIT_STEVEN if found else EXIT_AUDREY)
    if kind == "psat":
        sol = solve_bruteforce(obj) if method == "brute" else solve_backtracking(obj)
        found = sol is not None
        rep.say(f"satisfiable: {'yes' if found else 'no'}")
        if found:
            rep.say("order: " + " < ".join(obj.variable_name(v) for v in sol.order))
        rep.fields["satisfiable"] = str(found).lower()
        return rep.finish(EXIT_STEVEN if found else EXIT_AUDREY)

    arena, objective = obj
    if args.dot:
        Path(args.dot).write_text(inst.export_dot(arena, objective), encoding="utf-8")
    if kind == "rabin":
        res = solve_rabin_iar(arena, objective) if method == "iar" else solve_rabin_bruteforce(arena, objective, jobs=args.jobs)
    elif kind == "parity":
        if method in ("auto", "zielonka"):
            res = solve_parity_zielonka(arena, objective)
        elif method == "brute":
            res = solve_rabin_bruteforce(arena, parity_to_rabin(objective), jobs=args.jobs)
        else:
            res = solve_rabin_iar(arena, parity_to_rabin(objective))
    elif kind == "muller":
        res = solve_muller_lar(arena, objective)
    else:
        res = solve_genparity(arena, objective, method=method)
    rep.say(f"winner: {res.winner}")
    _print_strategy(res, arena, rep)
    rep.fields["winner"] = str(res.winner)
    return rep.finish(EXIT_STEVEN if res.winner is STEVEN else EXIT_AUDREY)


# ---------------------------------------------------------------------------
# reduce

REDUCTIONS = {
    ("clique", "psat"): lambda x: clique_to_permsat(x),
    ("psat", "rabin"): lambda f: permsat_to_rabin(f),
    ("psat", "genparity"): lambda f: permsat_to_genparity2(f),
    ("rabin", "muller"): lambda g: (g[0], rabin_to_muller(g[1], g[0].vertex_count)),
    ("rabin", "genparity"): lambda g: (g[0], rabin_to_genparity(g[1], g[0].vertex_count)),
    ("genparity", "rabin"): lambda g: (g[0], genparity_to_rabin(g[1])),
    ("parity", "rabin"): lambda g: (g[0], parity_to_rabin(g[1])),
}


def reduction_path(src: str, dst: str) -> list[str]:
    """Shortest chain of reductions from ``src`` to ``dst`` (breadth first)."""
    prev = {src: None}
    todo = deque([src])
    while todo:
        k = todo.popleft()
        if k == dst:
            break
        for a, b in sorted(REDUCTIONS):
            if a == k and b not in prev:
                prev[b] = k
                todo.append(b)
    if dst not in prev or src == dst:
        raise UsageError(f"no reduction from {src} to {dst}")
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def size_report(kind: str, obj) -> dict[str, int]:
    if kind == "clique":
        return {"k": obj.k, "edges": len(obj.edges)}
    if kind == "psat":
        return {"vars": obj.variable_count, "clauses": obj.clause_count}
    arena, objective = obj
    out = {"vertices": arena.vertex_count, "edges": arena.edge_count}
    if kind == "rabin":
        out["pairs"] = objective.degree
    elif kind == "muller":
        out["colors"] = objective.num_colours
    elif kind == "parity":
        out["colors"] = objective.max_colour
    else:
        out["dim"] = objective.dimension
        out["colors"] = objective.max_colour
    return out


def cmd_reduce(args, rep: Outcome) -> int:
    path = reduction_path(args.src, args.dst)
    kind, obj = inst.read_instance(args.input)
    if kind != args.src:
        raise UsageError(f"input is a {kind} instance, not {args.src}")
    for a, b in zip(path, path[1:]):
        obj = REDUCTIONS[a, b](obj)
    text = inst.write_instance(args.dst, obj)
    Path(args.output).write_text(text, encoding="utf-8")
    if args.dot and args.dst not in ("clique", "psat"):
        Path(args.dot).write_text(inst.export_dot(*obj), encoding="utf-8")
    sizes = size_report(args.dst, obj)
    rep.say("reduction: " + " -> ".join(path))
    rep.say(" ".join(f"{k}={v}" for k, v in sizes.items()))
    rep.fields.update(src=args.src, dst=args.dst, **sizes)
    return rep.finish(EXIT_OK)


# ---------------------------------------------------------------------------
# check-chain


def chain_verdicts(instance: CliqueInstance, jobs: int = 1) -> tuple[bool, bool, bool]:
    """(clique exists, formula satisfiable, Steven wins the Rabin game)."""
    clique = solve_clique_bruteforce(instance) is not None
    formula = clique_to_permsat(instance)
    sat = solve_bruteforce(formula) is not None
    arena, objective = permsat_to_rabin(formula)
    steven = solve_rabin_bruteforce(arena, objective, jobs=jobs).winner is STEVEN
    return clique, sat, steven


def _all_graphs(k: int, limit: int = 1 << 16):
    cand = list(CliqueInstance(k).cross_row_pairs())
    if 1 << len(cand) > limit:
        raise ResourceLimitError(f"2^{len(cand)} graphs exceed the exhaustive limit {limit}")
    for r in range(len(cand) + 1):
        for subset in combinations(cand, r):
            yield CliqueInstance(k, frozenset(subset))


def cmd_check_chain(args, rep: Outcome) -> int:
    if args.file:
        kind, obj = inst.read_instance(args.file)
        if kind != "clique":
            raise UsageError("check-chain expects a clique instance")
        graphs = [obj]
    elif args.exhaustive:
        graphs = list(_all_graphs(args.k))
    else:
        rep.say(f"# seed={args.seed}")
        graphs = [
            inst.gen_clique(args.k, args.density, args.seed + s, planted=args.planted)
            for s in range(args.samples)
        ]
    agree = 0
    for n, g in enumerate(graphs):
        c, s, r = chain_verdicts(g, jobs=args.jobs)
        ok = c == s == r
        agree += ok
        rep.say(f"instance {n}: clique={c} psat={s} rabin={r} {'agree' if ok else 'DISAGREE'}")
    rep.say(f"agreement {agree}/{len(graphs)}")
    rep.fields.update(instances=len(graphs), agree=agree, seed=args.seed)
    return rep.finish(EXIT_OK if agree == len(graphs) else EXIT_DISAGREE)


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args, rep: Outcome) -> int:
    kind = args.kind
    if kind == "clique":
        obj = inst.gen_clique(args.k, args.density, args.seed, planted=args.planted)
        text = inst.write_clique(obj)
        out_kind = "clique"
    elif kind == "psat":
        obj = inst.gen_permsat(args.k, args.m, args.beta, args.seed)
        text = inst.write_permsat(obj)
        out_kind = "psat"
    elif kind == "rabin":
        obj = inst.gen_rabin(args.n, args.k, args.density, args.seed)
        text = inst.write_game(*obj)
        out_kind = "rabin"
    else:
        obj = inst.gen_parity(args.n, args.k, args.density, args.seed)
        text = inst.write_game(*obj)
        out_kind = "parity"
    header = f"# generated kind={kind} seed={args.seed}\n"
    if args.output:
        Path(args.output).write_text(header + text, encoding="utf-8")
    else:
        rep.say((header + text).rstrip("\n"))
    rep.say(" ".join(f"{k}={v}" for k, v in size_report(out_kind, obj).items()))
    rep.fields.update(kind=kind, seed=args.seed)
    return rep.finish(EXIT_OK)


# ---------------------------------------------------------------------------
# bench


def cycle_formula(k: int) -> Formula:
    """``x_1 < x_2 < ... < x_k < x_1`` as unit clauses: unsatisfiable, so
    brute force must try all ``k!`` permutations."""
    clauses = tuple(((i, i % k + 1),) for i in range(1, k + 1))
    return Formula(k, clauses, alpha=2, beta=1)


def bench_rows(k_min: int, k_max: int, repeats: int, methods, iar_max_k: int):
    rows = []
    for k in range(k_min, k_max + 1):
        formula = cycle_formula(k)
        for method in methods:
            if method == "iar" and k > iar_max_k:
                rows.append((k, method, math.nan, math.nan, 0, "skipped"))
                continue
            times = []
            status = "ok"
            for _ in range(repeats):
                t0 = time.perf_counter()
                try:
                    if method == "brute":
                        solve_bruteforce(formula, limit=max(10, k))
                    else:
                        solve_rabin_iar(*permsat_to_rabin(formula))
                except ResourceLimitError:
                    status = "limit"
                    break
                times.append(time.perf_counter() - t0)
            if times:
                rows.append((k, method, statistics.median(times), statistics.fmean(times), len(times), status))
            else:
                rows.append((k, method, math.nan, math.nan, 0, status))
    return rows


def cmd_bench(args, rep: Outcome) -> int:
    if args.k_min < 2 or args.k_max < args.k_min:
        raise UsageError("need 2 <= k-min <= k-max")
    if args.repeats < 1:
        raise UsageError("repeats must be positive")
    methods = [m for m in args.methods.split(",") if m]
    if not methods or any(m not in ("brute", "iar") for m in methods):
        raise UsageError("methods are a comma separated subset of brute,iar")
    rows = bench_rows(args.k_min, args.k_max, args.repeats, methods, args.iar_max_k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "method", "median_seconds", "mean_seconds", "runs", "status"])
    for row in rows:
        w.writerow(row)
    if args.output:
        Path(args.output).write_text(buf.getvalue(), encoding="utf-8")
    else:
        rep.say(buf.getvalue().rstrip("\n"))
    rep.fields.update(rows=len(rows), k_min=args.k_min, k_max=args.k_max)
    return rep.finish(EXIT_OK)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="permgames", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("solve", help="decide an instance file")
    s.add_argument("file")
    s.add_argument("--method", default="auto", choices=["auto", "brute", "iar", "lar", "zielonka"])
    s.add_argument("--dot", help="also write the arena as DOT")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="translate an instance along the reduction chain")
    r.add_argument("--from", dest="src", required=True, choices=KINDS)
    r.add_argument("--to", dest="dst", required=True, choices=KINDS)
    r.add_argument("input")
    r.add_argument("output")
    r.add_argument("--dot", help="also write the output arena as DOT")
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("check-chain", help="compare clique, psat and Rabin verdicts")
    c.add_argument("file", nargs="?")
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--k", type=int, default=3)
    c.add_argument("--density", type=float, default=0.5)
    c.add_argument("--planted", action="store_true")
    c.add_argument("--exhaustive", action="store_true", help="every cross-row edge set for --k")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_check_chain)

    g = sub.add_parser("gen", help="write a seeded random instance")
    g.add_argument("--kind", required=True, choices=["clique", "psat", "rabin", "parity"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--k", type=int, default=3, help="grid size, variables, pairs or colours")
    g.add_argument("--n", type=int, default=5, help="vertices (games)")
    g.add_argument("--m", type=int, default=4, help="clauses (psat)")
    g.add_argument("--beta", type=int, default=4)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--planted", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time brute force and IAR against k")
    b.add_argument("--k-min", type=int, default=4)
    b.add_argument("--k-max", type=int, default=8)
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--methods", default="brute,iar")
    b.add_argument("--iar-max-k", type=int, default=5)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    rep = Outcome(out)
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a command is required")
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
        rep.fields["command"] = args.command
        return args.func(args, rep)
    except UsageError as exc:
        rep.say(f"usage error: {exc}")
        return rep.finish(EXIT_USAGE)
    except ResourceLimitError as exc:
        rep.say(f"resource limit: {exc}")
        return rep.finish(EXIT_RESOURCE)
    except (PermGamesError, ValidationError, OSError) as exc:
        rep.say(f"input error: {exc}")
        return rep.finish(EXIT_INPUT)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
