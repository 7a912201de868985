"""The ten acceptance criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in
the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import csv
import io
import sys
import time
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import fuzz  # noqa: E402
from permgames import instances as inst  # noqa: E402
from permgames.arena import STEVEN, evaluate_lasso  # noqa: E402
from permgames.cli import main  # noqa: E402
from permgames.permsat import solve_bruteforce  # noqa: E402
from permgames.reductions import (  # noqa: E402
    CliqueInstance,
    clique_to_permsat,
    parity_to_rabin,
    permsat_to_genparity2,
    permsat_to_rabin,
    rabin_to_genparity,
    rabin_to_muller,
    strategy_from_assignment,
)
from permgames.solvers import (  # noqa: E402
    audrey_counter_check,
    solve_by_double_enumeration,
    solve_clique_bruteforce,
    solve_genparity,
    solve_muller_lar,
    solve_parity_zielonka,
    solve_rabin_bruteforce,
    solve_rabin_iar,
)

RESULTS: list[str] = []


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def chain(g):
    c = solve_clique_bruteforce(g) is not None
    f = clique_to_permsat(g)
    s = solve_bruteforce(f) is not None
    r = solve_rabin_bruteforce(*permsat_to_rabin(f)).winner is STEVEN
    return c == s == r


def random_formulas(count, seed0):
    for s in range(count):
        yield inst.gen_permsat(2 + s % 4, 1 + (s // 4) % 6, 4, seed0 + s)


def test_criterion_1_exhaustive_chain():
    t = time.perf_counter()
    cand = list(CliqueInstance(2).cross_row_pairs())
    graphs = [CliqueInstance(2, frozenset(sub)) for r in range(len(cand) + 1) for sub in combinations(cand, r)]
    agree = sum(chain(g) for g in graphs)
    dt = time.perf_counter() - t
    ok = len(graphs) == 16 and agree == 16 and dt < 10
    assert report(1, ok, f"{agree}/{len(graphs)} agree in {dt:.2f}s (limit 10s)")


def test_criterion_2_random_chain():
    t = time.perf_counter()
    graphs = [inst.gen_clique(3, d, 1000 * i + s) for i, d in enumerate((0.0, 0.3, 0.6, 1.0)) for s in range(50)]
    agree = sum(chain(g) for g in graphs)
    dt = time.perf_counter() - t
    ok = agree == 200 and dt < 300
    assert report(2, ok, f"{agree}/200 agree in {dt:.1f}s (limit 300s)")


def test_criterion_3_permsat_rabin_equivalence():
    agree = certified = sats = 0
    total = 0
    for f in random_formulas(300, 30_000):
        total += 1
        w = solve_bruteforce(f)
        arena, obj = permsat_to_rabin(f)
        steven = solve_rabin_bruteforce(arena, obj).winner is STEVEN
        agree += (w is not None) == steven
        if w is not None:
            sats += 1
            certified += audrey_counter_check(arena, obj, strategy_from_assignment(f, arena, w)) is None
    ok = agree == total == 300 and certified == sats
    assert report(3, ok, f"{agree}/{total} verdicts agree, {certified}/{sats} transported strategies verified")


def test_criterion_4_solver_agreement():
    rabin = 0
    for s in range(500):
        arena, obj = inst.gen_rabin(1 + s % 5, 1 + s % 2, 0.2 + 0.1 * (s % 6), 40_000 + s)
        rabin += solve_rabin_bruteforce(arena, obj).winner is solve_rabin_iar(arena, obj).winner
    parity = 0
    for s in range(200):
        arena, obj = inst.gen_parity(1 + s % 3, 1 + (s // 3) % 3, 0.3 + 0.1 * (s % 5), 41_000 + s)
        parity += solve_parity_zielonka(arena, obj).winner is solve_by_double_enumeration(arena, obj)
    ok = rabin == 500 and parity == 200
    assert report(4, ok, f"brute=iar {rabin}/500, zielonka=double enumeration {parity}/200")


def test_criterion_5_encodings():
    muller = gp = 0
    for s in range(200):
        arena, obj = inst.gen_rabin(1 + s % 6, 1 + s % 3, 0.2 + 0.1 * (s % 5), 50_000 + s)
        base = solve_rabin_bruteforce(arena, obj).winner
        n = arena.vertex_count
        muller += solve_muller_lar(arena, rabin_to_muller(obj, n)).winner is base
        gp += solve_genparity(arena, rabin_to_genparity(obj, n)).winner is base
    par = 0
    for s in range(200):
        arena, obj = inst.gen_parity(1 + s % 8, 1 + s % 6, 0.2 + 0.1 * (s % 5), 51_000 + s)
        par += solve_parity_zielonka(arena, obj).winner is solve_rabin_bruteforce(arena, parity_to_rabin(obj)).winner
    ok = muller == gp == par == 200
    assert report(5, ok, f"muller {muller}/200, genparity {gp}/200, parity->rabin {par}/200")


def test_criterion_6_two_dimensional_corollary():
    agree = 0
    wrong = []
    for f in random_formulas(200, 60_000):
        sat = solve_bruteforce(f) is not None
        steven = solve_genparity(*permsat_to_genparity2(f)).winner is STEVEN
        if sat == steven:
            agree += 1
        else:
            wrong.append(str(f))
    detail = f"{agree}/200 agree"
    if wrong:
        detail += f"; first mismatch {wrong[0]}"
    assert report(6, agree == 200, detail)


def test_criterion_7_size_formulas():
    bad = []
    checked = 0
    for s in range(200):
        k = 1 + s % 4
        g = inst.gen_clique(k, 0.1 * (s % 11), 70_000 + s)
        f = clique_to_permsat(g)
        checked += 1
        units = sum(len(c) == 1 for c in f.clauses)
        if f.variable_count != 2 * k + 1 or units != 3 * k:
            bad.append(("clique", s))
    for f in list(random_formulas(300, 71_000)) + [clique_to_permsat(inst.gen_clique(2, 0.5, s)) for s in range(20)]:
        arena, obj = permsat_to_rabin(f)
        k, m = f.variable_count, f.clause_count
        checked += 1
        ok = (
            arena.vertex_count == 1 + m + k * (k - 1)
            and arena.edge_count == m + sum(len(c) for c in f.clauses) + k * (k - 1)
            and obj.degree == k
            and all(len(g) == len(b) == k - 1 for g, b in obj.pairs)
        )
        if not ok:
            bad.append(("rabin", str(f)))
    assert report(7, not bad, f"{checked - len(bad)}/{checked} outputs match the size formulas exactly")


def test_criterion_8_lasso_encoding():
    agree = 0
    for s in range(1000):
        arena, obj = inst.gen_rabin(1 + s % 6, 1 + s % 3, 0.2 + 0.1 * (s % 6), 80_000 + s)
        lasso = inst.random_lasso(arena, 81_000 + s)
        m = rabin_to_muller(obj, arena.vertex_count)
        agree += evaluate_lasso(arena, obj, lasso) is evaluate_lasso(arena, m, lasso)
    assert report(8, agree == 1000, f"{agree}/1000 lassos evaluate identically")


def test_criterion_9_format_robustness():
    parts = []
    ok = True
    for n, fmt in enumerate(("clique", "psat", "game")):
        accepted, rejected, problems = fuzz.fuzz(fmt, 10_000, seed=90 + n)
        valid = fuzz.corpus(fmt, 60)
        trips = sum(inst.write_instance(*k_obj) == text for text in valid for k_obj in [inst.parse_instance(text)])
        ok &= not problems and trips == len(valid) and accepted + rejected == 10_000
        parts.append(f"{fmt}: {len(problems)} problems, {rejected} rejected, {accepted} accepted, roundtrip {trips}/{len(valid)}")
    assert report(9, ok, "; ".join(parts))


def test_criterion_10_bench_trend():
    buf = io.StringIO()
    code = main(["bench", "--k-min", "4", "--k-max", "8", "--repeats", "5", "--methods", "brute,iar"], out=buf)
    text = buf.getvalue()
    rows = list(csv.DictReader(io.StringIO(text.split("\nsummary")[0])))
    brute = [float(r["median_seconds"]) for r in rows if r["method"] == "brute"]
    increasing = all(a < b for a, b in zip(brute, brute[1:]))
    ok = code == 0 and len(brute) == 5 and increasing
    shown = ", ".join(f"k={4 + i}:{t * 1e3:.2f}ms" for i, t in enumerate(brute))
    assert report(10, ok, f"brute-force medians {shown}")


if __name__ == "__main__":
    failed = 0
    tests = [(int(n.split("_")[2]), f) for n, f in globals().items() if n.startswith("test_criterion_")]
    for _, fn in sorted(tests, key=lambda t: t[0]):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
