import csv
import io
import re

import pytest

from permgames import instances as inst
from permgames.cli import main, reduction_path
from permgames.permsat import Formula
from permgames.reductions import permsat_to_rabin


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], out=buf)
    text = buf.getvalue()
    last = text.strip().splitlines()[-1]
    assert last.startswith("summary ")
    assert re.search(r"\bexit=(\d+)$", last).group(1) == str(code)
    return code, text


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture
def rabin_file(tmp_path):
    return write(tmp_path / "g.game", inst.write_game(*permsat_to_rabin(Formula(2, (((1, 2),),)))))


def test_solve_rabin_steven(rabin_file):
    code, out = run("solve", rabin_file)
    assert code == 10 and "winner=Steven" in out
    assert "[C_1] -> [x_1<x_2]" in out


def test_solve_psat_unsat(tmp_path):
    f = write(tmp_path / "f.psat", "psat vars=2 alpha=2 beta=1\nclause 1<2\nclause 2<1\n")
    code, out = run("solve", f)
    assert code == 20 and "satisfiable=false" in out


def test_solve_method_mismatch(tmp_path):
    p = write(tmp_path / "p.game", inst.write_game(*inst.gen_parity(3, 2, 0.5, 1)))
    code, _ = run("solve", "--method", "lar", p)
    assert code == 1


def test_solve_methods_agree(tmp_path):
    p = write(tmp_path / "p.game", inst.write_game(*inst.gen_parity(5, 4, 0.4, 3)))
    codes = {run("solve", "--method", m, p)[0] for m in ("auto", "zielonka", "brute", "iar")}
    assert len(codes) == 1
    r = write(tmp_path / "r.game", inst.write_game(*inst.gen_rabin(5, 2, 0.4, 3)))
    assert run("solve", r)[0] == run("solve", "--method", "iar", r)[0] == run("solve", "--jobs", 2, r)[0]


def test_solve_audrey_cycle(tmp_path):
    text = inst.write_game(*permsat_to_rabin(Formula(2, (((1, 2),), ((2, 1),)))))
    code, out = run("solve", write(tmp_path / "c.game", text))
    assert code == 20
    assert "bad cycle: Δ" in out


def test_solve_dot(tmp_path, rabin_file):
    dot = tmp_path / "g.dot"
    run("solve", rabin_file, "--dot", dot)
    assert dot.read_text(encoding="utf-8").startswith("digraph")


def test_input_errors(tmp_path):
    assert run("solve", tmp_path / "missing")[0] == 2
    assert run("solve", write(tmp_path / "bad", "kxk two\n"))[0] == 2
    (tmp_path / "bin").write_bytes(b"\xff\xfe\x00")
    assert run("solve", tmp_path / "bin")[0] == 2


def test_usage_errors():
    assert run()[0] == 1
    assert run("solve")[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("bench", "--k-min", 5, "--k-max", 4)[0] == 1
    assert run("bench", "--methods", "magic")[0] == 1


def test_resource_error(tmp_path):
    f = write(tmp_path / "big.psat", inst.write_permsat(Formula(11, (((1, 2),),))))
    assert run("solve", "--method", "brute", f)[0] == 3


def test_reduce_clique_to_psat(tmp_path):
    src = write(tmp_path / "e.clq", "kxk 2\n")
    code, out = run("reduce", "--from", "clique", "--to", "psat", src, tmp_path / "o.psat")
    assert code == 0 and "vars=5 clauses=10" in out
    assert inst.parse_permsat((tmp_path / "o.psat").read_text(encoding="utf-8")).clause_count == 10


def test_reduce_psat_to_rabin_size(tmp_path):
    src = write(tmp_path / "f.psat", "psat vars=3 alpha=2 beta=2\nclause 1<2 | 2<3\nclause 3<1\n")
    code, out = run("reduce", "--from", "psat", "--to", "rabin", src, tmp_path / "o.game", "--dot", tmp_path / "o.dot")
    assert code == 0 and "vertices=9" in out
    assert (tmp_path / "o.dot").exists()


def test_reduce_psat_to_muller(tmp_path):
    src = write(tmp_path / "f.psat", "psat vars=3 alpha=2 beta=1\nclause 1<2\n")
    code, out = run("reduce", "--from", "psat", "--to", "muller", src, tmp_path / "o.game")
    assert code == 0 and "colors=6" in out
    assert reduction_path("psat", "muller") == ["psat", "rabin", "muller"]


def test_reduce_unsupported(tmp_path):
    src = write(tmp_path / "g.game", inst.write_game(*inst.gen_rabin(3, 1, 0.5, 1)))
    assert run("reduce", "--from", "rabin", "--to", "clique", src, tmp_path / "o")[0] == 1
    assert run("reduce", "--from", "psat", "--to", "rabin", src, tmp_path / "o")[0] == 1


def test_check_chain_exhaustive():
    code, out = run("check-chain", "--exhaustive", "--k", 2)
    assert code == 0 and "agreement 16/16" in out


def test_check_chain_planted_and_empty(tmp_path):
    code, out = run("check-chain", "--samples", 3, "--k", 3, "--planted", "--seed", 4)
    assert code == 0 and out.count("clique=True psat=True rabin=True") == 3
    assert "# seed=4" in out
    empty = write(tmp_path / "e.clq", "kxk 2\n")
    code, out = run("check-chain", empty)
    assert code == 0 and "clique=False psat=False rabin=False" in out


def test_check_chain_flags_disagreement(monkeypatch):
    import permgames.cli as cli
    monkeypatch.setattr(cli, "solve_clique_bruteforce", lambda g: None)
    code, out = run("check-chain", "--samples", 2, "--k", 2, "--density", 1.0)
    assert code == 4 and "DISAGREE" in out


def test_gen_is_reproducible(tmp_path):
    for kind in ("clique", "psat", "rabin", "parity"):
        a, b = tmp_path / f"{kind}1", tmp_path / f"{kind}2"
        assert run("gen", "--kind", kind, "--seed", 42, "-o", a)[0] == 0
        run("gen", "--kind", kind, "--seed", 42, "-o", b)
        text = a.read_text(encoding="utf-8")
        assert text == b.read_text(encoding="utf-8")
        assert text.startswith(f"# generated kind={kind} seed=42")
        inst.parse_instance(text)


def test_bench_csv(tmp_path):
    out = tmp_path / "b.csv"
    code, _ = run("bench", "--k-min", 3, "--k-max", 5, "--repeats", 1, "--iar-max-k", 4, "-o", out)
    assert code == 0
    rows = list(csv.DictReader(out.open(encoding="utf-8")))
    assert [(r["k"], r["method"]) for r in rows] == [(str(k), m) for k in (3, 4, 5) for m in ("brute", "iar")]
    assert rows[-1]["status"] == "skipped"
