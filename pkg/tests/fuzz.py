"""Mutation fuzzing of the text formats."""

import random

from permgames import instances as inst
from permgames.errors import PermGamesError
from permgames.reductions import permsat_to_genparity2, rabin_to_genparity, rabin_to_muller

TOKENS = ["0", "1", "-1", "2", "99", "x", "=", "<", "|", ",", "-", "owner=S", "owner=Q", "G=", "B=1,1",
          "colors=", "family", "edge", "vertex", "pair", "init", "clause", "var", "kxk", "psat", "game",
          "vars=2", "pairs=0", "Δ", "#", "\t", "1<1", "1<2<", "9999999999999999999999"]


def corpus(fmt: str, count: int = 12):
    out = []
    for s in range(count):
        if fmt == "clique":
            out.append(inst.write_clique(inst.gen_clique(1 + s % 4, 0.4, s, planted=s % 2 == 0)))
        elif fmt == "psat":
            f = inst.gen_permsat(2 + s % 4, 1 + s % 5, 1 + s % 4, s)
            out.append(inst.write_permsat(f))
        else:
            arena, rabin = inst.gen_rabin(1 + s % 5, 1 + s % 3, 0.5, s)
            pick = s % 4
            if pick == 0:
                out.append(inst.write_game(arena, rabin))
            elif pick == 1:
                out.append(inst.write_game(*inst.gen_parity(1 + s % 5, 1 + s % 4, 0.5, s)))
            elif pick == 2:
                out.append(inst.write_game(arena, rabin_to_muller(rabin, arena.vertex_count)))
            else:
                out.append(inst.write_game(arena, rabin_to_genparity(rabin, arena.vertex_count)))
    if fmt == "psat":
        from permgames.permsat import Formula
        out.append(inst.write_permsat(Formula(3, (((1, 2, 3), (3, 1)),), names=("a", "b", "c"))))
    if fmt == "game":
        out.append(inst.write_game(*permsat_to_genparity2(inst.gen_permsat(3, 2, 2, 1))))
    return out


def mutate(text: str, rnd: random.Random) -> str:
    lines = text.split("\n")
    for _ in range(rnd.randint(1, 3)):
        if not lines:
            lines = [""]
        op = rnd.randrange(8)
        i = rnd.randrange(len(lines))
        if op == 0:
            del lines[i]
        elif op == 1:
            lines.insert(i, lines[rnd.randrange(len(lines))])
        elif op == 2 and lines[i]:
            j = rnd.randrange(len(lines[i]))
            lines[i] = lines[i][:j] + lines[i][j + 1:]
        elif op == 3:
            toks = lines[i].split(" ")
            toks[rnd.randrange(len(toks))] = rnd.choice(TOKENS)
            lines[i] = " ".join(toks)
        elif op == 4:
            toks = lines[i].split(" ")
            toks.insert(rnd.randrange(len(toks) + 1), rnd.choice(TOKENS))
            lines[i] = " ".join(toks)
        elif op == 5:
            lines[i] = "".join(str((int(c) + rnd.randint(1, 9)) % 10) if c.isdigit() and rnd.random() < 0.5 else c for c in lines[i])
        elif op == 6:
            j = rnd.randrange(len(lines))
            lines[i], lines[j] = lines[j], lines[i]
        else:
            lines[i] = lines[i] + chr(rnd.choice([0, 7, 0x3B1, 0xFEFF, 0x10FFFF, ord(" "), ord("=")]))
    return "\n".join(lines)


def fuzz(fmt: str, runs: int, seed: int = 0):
    """Returns (accepted, rejected, problems); a problem is a crash or a broken roundtrip."""
    rnd = random.Random(seed)
    base = corpus(fmt)
    accepted = rejected = 0
    problems = []
    for _ in range(runs):
        text = mutate(rnd.choice(base), rnd)
        try:
            kind, obj = inst.parse_instance(text)
        except PermGamesError:
            rejected += 1
            continue
        except Exception as exc:  # anything else is a crash
            problems.append((text, repr(exc)))
            continue
        accepted += 1
        out = inst.write_instance(kind, obj)
        again = inst.parse_instance(out)
        if again != (kind, obj) or inst.write_instance(kind, again[1]) != out:
            problems.append((text, "roundtrip"))
    return accepted, rejected, problems
